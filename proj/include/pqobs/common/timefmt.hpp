// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace pqobs {

// Seconds since the Unix epoch, UTC. Signed so pre-1970 certificate dates
// survive a round trip.
using EpochSeconds = std::int64_t;

EpochSeconds epoch_from_civil(int year, unsigned month, unsigned day, int hour = 0, int minute = 0, int second = 0);

// "2025-01-01T00:00:00Z"
std::string format_iso8601(EpochSeconds t);
std::optional<EpochSeconds> parse_iso8601(std::string_view s);

}  // namespace pqobs
