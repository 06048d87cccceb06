#include "sciflow/time.hpp"
#include "sciflow/error.hpp"

#include <chrono>
#include <cstdio>

namespace sciflow {

namespace {

bool read_digits(std::string_view s, std::size_t& pos, int count, int& out) {
    if (pos + count > s.size()) return false;
    int v = 0;
    for (int i = 0; i < count; ++i) {
        char c = s[pos + i];
        if (c < '0' || c > '9') return false;
        v = v * 10 + (c - '0');
    }
    pos += count;
    out = v;
    return true;
}

bool expect(std::string_view s, std::size_t& pos, char c) {
    if (pos >= s.size() || s[pos] != c) return false;
    ++pos;
    return true;
}

} // namespace

Timestamp parse_rfc3339(std::string_view s) {
    using namespace std::chrono;
    std::size_t pos = 0;
    int y, mo, d, h, mi, se;
    bool ok = read_digits(s, pos, 4, y) && expect(s, pos, '-') &&
              read_digits(s, pos, 2, mo) && expect(s, pos, '-') &&
              read_digits(s, pos, 2, d);
    if (ok && pos < s.size() && (s[pos] == 'T' || s[pos] == 't'))
        ++pos;
    else
        ok = false;
    ok = ok && read_digits(s, pos, 2, h) && expect(s, pos, ':') &&
         read_digits(s, pos, 2, mi) && expect(s, pos, ':') &&
         read_digits(s, pos, 2, se);
    if (!ok) throw Error("unparsable timestamp: '" + std::string(s) + "'");

    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        std::size_t ndig = 0;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') { ++pos; ++ndig; }
        if (ndig == 0) throw Error("unparsable timestamp: '" + std::string(s) + "'");
    }

    std::int64_t offset = 0;
    if (pos < s.size() && (s[pos] == 'Z' || s[pos] == 'z')) {
        ++pos;
    } else if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        int sign = s[pos] == '+' ? 1 : -1;
        ++pos;
        int oh, om;
        if (!(read_digits(s, pos, 2, oh) && expect(s, pos, ':') && read_digits(s, pos, 2, om)))
            throw Error("unparsable timestamp: '" + std::string(s) + "'");
        offset = sign * (oh * 3600LL + om * 60LL);
    } else {
        throw Error("unparsable timestamp (missing offset): '" + std::string(s) + "'");
    }
    if (pos != s.size())
        throw Error("unparsable timestamp (trailing data): '" + std::string(s) + "'");
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || se > 60)
        throw Error("timestamp field out of range: '" + std::string(s) + "'");

    year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok())
        throw Error("invalid calendar date: '" + std::string(s) + "'");
    std::int64_t days = sys_days{ymd}.time_since_epoch().count();
    return days * kSecondsPerDay + h * 3600LL + mi * 60LL + se - offset;
}

std::string format_rfc3339(Timestamp t) {
    using namespace std::chrono;
    std::int64_t days = t >= 0 ? t / kSecondsPerDay : (t - kSecondsPerDay + 1) / kSecondsPerDay;
    std::int64_t sod = t - days * kSecondsPerDay;
    year_month_day ymd{sys_days{std::chrono::days{days}}};
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02dZ",
                  static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                  static_cast<unsigned>(ymd.day()), static_cast<int>(sod / 3600),
                  static_cast<int>((sod / 60) % 60), static_cast<int>(sod % 60));
    return buf;
}

std::int64_t utc_day(Timestamp t) {
    return t >= 0 ? t / kSecondsPerDay : (t - kSecondsPerDay + 1) / kSecondsPerDay;
}

std::string format_day(std::int64_t day) {
    using namespace std::chrono;
    year_month_day ymd{sys_days{std::chrono::days{day}}};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

} // namespace sciflow
