// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace pqobs {

// Single exception type for every reported failure. `code` is a stable
// machine-readable token (duplicate_identifier, schema_violation, ...) that the
// CLI prints alongside the message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code))
    {
    }

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

}  // namespace pqobs
