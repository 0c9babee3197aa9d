#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace qarch {

/// Calendar date in the proleptic Gregorian calendar. Comparison follows
/// chronological order; serial numbers count days since 1970-01-01.
struct Date {
    int year = 1970;
    int month = 1;
    int day = 1;

    static Date parse(const std::string& iso);  // "YYYY-MM-DD", throws DataError
    static Date from_serial(std::int64_t days);

    std::string to_string() const;
    std::int64_t serial() const;
    int weekday() const;  // 0 = Sunday .. 6 = Saturday
    bool is_business_day() const;
    Date next_business_day() const;

    friend auto operator<=>(const Date&, const Date&) = default;
};

/// `count` consecutive business days (Mon-Fri) starting at `start`, which is
/// advanced to the next business day if it falls on a weekend.
std::vector<Date> business_day_series(Date start, std::size_t count);

}  // namespace qarch
