// SPDX-License-Identifier: Apache-2.0
#include "pqobs/common/timefmt.hpp"

#include <chrono>
#include <cstdio>

namespace pqobs {

namespace chr = std::chrono;

EpochSeconds epoch_from_civil(int year, unsigned month, unsigned day, int hour, int minute, int second)
{
    auto days = chr::sys_days(chr::year(year) / chr::month(month) / chr::day(day));
    return static_cast<EpochSeconds>(days.time_since_epoch().count()) * 86400 + hour * 3600 + minute * 60 + second;
}

std::string format_iso8601(EpochSeconds t)
{
    auto day_count = t >= 0 ? t / 86400 : (t - 86399) / 86400;
    auto secs = t - day_count * 86400;
    chr::year_month_day ymd{chr::sys_days(chr::days(day_count))};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<int>(secs / 3600), static_cast<int>(secs / 60 % 60), static_cast<int>(secs % 60));
    return buf;
}

std::optional<EpochSeconds> parse_iso8601(std::string_view s)
{
    int y = 0;
    unsigned mo = 0;
    unsigned d = 0;
    int h = 0;
    int mi = 0;
    int se = 0;
    char z = 0;
    std::string text(s);
    if (std::sscanf(text.c_str(), "%4d-%2u-%2uT%2d:%2d:%2d%c", &y, &mo, &d, &h, &mi, &se, &z) != 7 || z != 'Z') {
        return std::nullopt;
    }
    chr::year_month_day ymd{chr::year(y), chr::month(mo), chr::day(d)};
    if (!ymd.ok() || h > 23 || mi > 59 || se > 60) {
        return std::nullopt;
    }
    return epoch_from_civil(y, mo, d, h, mi, se);
}

}  // namespace pqobs
