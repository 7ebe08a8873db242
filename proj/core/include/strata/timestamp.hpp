#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace strata {

/// Seconds since the Unix epoch, UTC. All pipeline time handling is
/// second-precision; fractional seconds in inputs are truncated.
using EpochSeconds = std::int64_t;

constexpr EpochSeconds kSecondsPerDay = 86400;

/// Days since 1970-01-01 for a proleptic Gregorian civil date.
std::int64_t days_from_civil(int year, int month, int day);

/// Inverse of days_from_civil.
void civil_from_days(std::int64_t days, int& year, int& month, int& day);

bool valid_civil(int year, int month, int day);

/// Parses a timestamp to a UTC instant. Accepted forms:
///   - ISO-8601: "2022-11-20T12:00:00Z", "2022-11-20 12:00:00+03:00",
///     optional fractional seconds (truncated), optional offset
///     (missing offset means UTC), date-only "2022-11-20" (midnight)
///   - classic Twitter: "Sun Nov 20 12:00:00 +0000 2022"
///   - a plain integer, taken as epoch seconds
std::optional<EpochSeconds> parse_timestamp(std::string_view s);

/// Parses strictly "YYYY-MM-DD"; midnight UTC.
std::optional<EpochSeconds> parse_date(std::string_view s);

/// "YYYY-MM-DDTHH:MM:SSZ"
std::string format_utc(EpochSeconds t);

}  // namespace strata
