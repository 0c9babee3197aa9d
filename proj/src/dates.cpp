#include "qarch/dates.hpp"

#include <cstdio>

#include "qarch/errors.hpp"

namespace qarch {

namespace {

bool is_leap(int y) { return y % 4 == 0 && (y % 100 != 0 || y % 400 == 0); }

int days_in_month(int y, int m) {
    static const int d[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return d[m - 1];
}

// Howard Hinnant's civil-calendar algorithms.
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                         static_cast<unsigned>(d) - 1u;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
    y = static_cast<int>(yy + (m <= 2));
}

bool parse_fixed_int(const std::string& s, std::size_t pos, std::size_t len, int& out) {
    int v = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
        if (i >= s.size() || s[i] < '0' || s[i] > '9') return false;
        v = v * 10 + (s[i] - '0');
    }
    out = v;
    return true;
}

}  // namespace

Date Date::parse(const std::string& iso) {
    Date dt;
    const bool shape_ok = iso.size() == 10 && iso[4] == '-' && iso[7] == '-' &&
                          parse_fixed_int(iso, 0, 4, dt.year) &&
                          parse_fixed_int(iso, 5, 2, dt.month) &&
                          parse_fixed_int(iso, 8, 2, dt.day);
    if (!shape_ok)
        throw DataError("invalid date '" + iso + "', expected YYYY-MM-DD");
    if (dt.month < 1 || dt.month > 12 || dt.day < 1 || dt.day > days_in_month(dt.year, dt.month))
        throw DataError("date '" + iso + "' is not a valid calendar day");
    return dt;
}

Date Date::from_serial(std::int64_t days) {
    Date dt;
    civil_from_days(days, dt.year, dt.month, dt.day);
    return dt;
}

std::string Date::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
    return buf;
}

std::int64_t Date::serial() const { return days_from_civil(year, month, day); }

int Date::weekday() const {
    // serial 0 is 1970-01-01, a Thursday
    const std::int64_t s = serial();
    return static_cast<int>(((s % 7) + 7 + 4) % 7);
}

bool Date::is_business_day() const {
    const int wd = weekday();
    return wd >= 1 && wd <= 5;
}

Date Date::next_business_day() const {
    Date d = from_serial(serial() + 1);
    while (!d.is_business_day()) d = from_serial(d.serial() + 1);
    return d;
}

std::vector<Date> business_day_series(Date start, std::size_t count) {
    std::vector<Date> out;
    out.reserve(count);
    Date d = start.is_business_day() ? start : start.next_business_day();
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(d);
        d = d.next_business_day();
    }
    return out;
}

}  // namespace qarch
