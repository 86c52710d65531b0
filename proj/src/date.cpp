// SPDX-License-Identifier: Apache-2.0

#include "sastlong/date.hpp"

#include <charconv>
#include <cstdio>

#include "sastlong/errors.hpp"

namespace sastlong {

namespace {

int parse_component(std::string_view text, std::size_t from, std::size_t len, std::string_view whole) {
    int value = 0;
    if (from + len > text.size())
        throw DataError("invalid date '" + std::string(whole) + "': expected YYYY-MM-DD");
    auto [ptr, ec] = std::from_chars(text.data() + from, text.data() + from + len, value);
    if (ec != std::errc() || ptr != text.data() + from + len)
        throw DataError("invalid date '" + std::string(whole) + "': expected YYYY-MM-DD");
    return value;
}

} // namespace

Date::Date(int year, unsigned month, unsigned day)
    : ymd_(std::chrono::year(year), std::chrono::month(month), std::chrono::day(day)) {
    if (!ymd_.ok())
        throw DataError("invalid date " + to_string());
}

Date Date::parse(std::string_view iso) {
    if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-')
        throw DataError("invalid date '" + std::string(iso) + "': expected YYYY-MM-DD");
    int y = parse_component(iso, 0, 4, iso);
    int m = parse_component(iso, 5, 2, iso);
    int d = parse_component(iso, 8, 2, iso);
    return Date(y, static_cast<unsigned>(m), static_cast<unsigned>(d));
}

std::string Date::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd_.year()),
                  static_cast<unsigned>(ymd_.month()), static_cast<unsigned>(ymd_.day()));
    return buf;
}

} // namespace sastlong
