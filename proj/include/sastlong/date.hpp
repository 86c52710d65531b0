// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <compare>
#include <string>
#include <string_view>

namespace sastlong {

/// Calendar date with day precision (UTC). Fix timestamps in public CVE data
/// are date-granular, so the whole toolkit works in whole days.
class Date {
public:
    Date() = default;
    Date(int year, unsigned month, unsigned day);

    /// Parses "YYYY-MM-DD". Throws DataError on anything else, including
    /// dates that do not exist on the civil calendar.
    static Date parse(std::string_view iso);

    std::string to_string() const;

    /// Days since the civil epoch; the difference of two of these is the
    /// signed day distance used for lead times.
    long day_number() const { return std::chrono::sys_days(ymd_).time_since_epoch().count(); }

    bool operator==(const Date& o) const { return ymd_ == o.ymd_; }
    std::strong_ordering operator<=>(const Date& o) const {
        return std::chrono::sys_days(ymd_) <=> std::chrono::sys_days(o.ymd_);
    }

private:
    std::chrono::year_month_day ymd_{std::chrono::year(1970), std::chrono::month(1), std::chrono::day(1)};
};

/// a - b in whole days, signed.
inline long days_between(const Date& a, const Date& b) {
    return a.day_number() - b.day_number();
}

} // namespace sastlong
