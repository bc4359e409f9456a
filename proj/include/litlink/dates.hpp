#pragma once

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>

#include "litlink/errors.hpp"

namespace litlink {

using Date = std::chrono::year_month_day;

inline Date make_date(int year, unsigned month, unsigned day) {
    return Date{std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{day}};
}

/// Signed whole-day difference a - b.
inline long days_between(const Date& a, const Date& b) {
    return (std::chrono::sys_days(a) - std::chrono::sys_days(b)).count();
}

inline long days_apart(const Date& a, const Date& b) {
    long d = days_between(a, b);
    return d < 0 ? -d : d;
}

inline Date add_days(const Date& d, long n) {
    return Date{std::chrono::sys_days(d) + std::chrono::days(n)};
}

/// Parses strict ISO-8601 YYYY-MM-DD. Throws ParseError on anything else.
inline Date parse_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        throw ParseError("invalid date '" + std::string(text) + "': expected YYYY-MM-DD");
    }
    auto digits = [&](size_t pos, size_t n) -> int {
        int v = 0;
        for (size_t i = pos; i < pos + n; ++i) {
            char c = text[i];
            if (c < '0' || c > '9') {
                throw ParseError("invalid date '" + std::string(text) + "': expected YYYY-MM-DD");
            }
            v = v * 10 + (c - '0');
        }
        return v;
    };
    Date d = make_date(digits(0, 4), static_cast<unsigned>(digits(5, 2)),
                       static_cast<unsigned>(digits(8, 2)));
    if (!d.ok()) {
        throw ParseError("invalid date '" + std::string(text) + "': no such calendar day");
    }
    return d;
}

inline std::string format_date(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(d.year()),
                  static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
    return buf;
}

}  // namespace litlink
