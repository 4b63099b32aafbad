// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

#include "pqobs/common/bytes.hpp"

namespace pqobs {

std::string sha256_hex(ByteView data);
std::string sha256_hex(std::string_view text);

}  // namespace pqobs
