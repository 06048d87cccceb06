#ifndef SCIFLOW_TIME_HPP
#define SCIFLOW_TIME_HPP

#include <cstdint>
#include <string>
#include <string_view>

namespace sciflow {

// Seconds since the Unix epoch, UTC. Fractional seconds in inputs are
// truncated toward the past.
using Timestamp = std::int64_t;

inline constexpr std::int64_t kSecondsPerDay = 86400;
inline constexpr std::int64_t kSecondsPerHour = 3600;

// Parses RFC 3339 timestamps: "YYYY-MM-DDTHH:MM:SS[.frac](Z|+HH:MM|-HH:MM)".
// Throws sciflow::Error on any deviation.
Timestamp parse_rfc3339(std::string_view s);

// Formats as "YYYY-MM-DDTHH:MM:SSZ".
std::string format_rfc3339(Timestamp t);

// UTC calendar day index (days since epoch, floor).
std::int64_t utc_day(Timestamp t);

// "YYYY-MM-DD" for a UTC day index.
std::string format_day(std::int64_t day);

} // namespace sciflow

#endif
