#include "strata/timestamp.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>

namespace strata {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

// Parses exactly `n` digits at s[pos..]; advances pos on success.
bool take_digits(std::string_view s, std::size_t& pos, int n, int& out) {
  if (pos + n > s.size()) return false;
  int v = 0;
  for (int i = 0; i < n; ++i) {
    char c = s[pos + i];
    if (c < '0' || c > '9') return false;
    v = v * 10 + (c - '0');
  }
  pos += n;
  out = v;
  return true;
}

bool take_char(std::string_view s, std::size_t& pos, char c) {
  if (pos < s.size() && s[pos] == c) {
    ++pos;
    return true;
  }
  return false;
}

constexpr std::array<const char*, 12> kMonthNames = {
    "Jan", "Feb", "Mar", "Apr", "May", "Jun",
    "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};

int month_from_name(std::string_view m) {
  for (int i = 0; i < 12; ++i) {
    if (m == kMonthNames[i]) return i + 1;
  }
  return 0;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool valid_time(int h, int mi, int sec) {
  return h >= 0 && h < 24 && mi >= 0 && mi < 60 && sec >= 0 && sec <= 60;
}

// "[+-]HH:MM", "[+-]HHMM", "[+-]HH" or "Z"; returns offset in seconds.
std::optional<int> parse_offset(std::string_view s, std::size_t& pos) {
  if (pos >= s.size()) return std::nullopt;
  if (s[pos] == 'Z' || s[pos] == 'z') {
    ++pos;
    return 0;
  }
  int sign = 0;
  if (s[pos] == '+') sign = 1;
  else if (s[pos] == '-') sign = -1;
  else return std::nullopt;
  ++pos;
  int hh = 0, mm = 0;
  if (!take_digits(s, pos, 2, hh)) return std::nullopt;
  if (pos < s.size() && s[pos] == ':') ++pos;
  if (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
    if (!take_digits(s, pos, 2, mm)) return std::nullopt;
  }
  if (hh > 23 || mm > 59) return std::nullopt;
  return sign * (hh * 3600 + mm * 60);
}

std::optional<EpochSeconds> parse_iso(std::string_view s) {
  std::size_t pos = 0;
  int y = 0, mo = 0, d = 0;
  if (!take_digits(s, pos, 4, y)) return std::nullopt;
  if (!take_char(s, pos, '-')) return std::nullopt;
  if (!take_digits(s, pos, 2, mo)) return std::nullopt;
  if (!take_char(s, pos, '-')) return std::nullopt;
  if (!take_digits(s, pos, 2, d)) return std::nullopt;
  if (!valid_civil(y, mo, d)) return std::nullopt;

  EpochSeconds day = days_from_civil(y, mo, d) * kSecondsPerDay;
  if (pos == s.size()) return day;

  if (s[pos] != 'T' && s[pos] != 't' && s[pos] != ' ') return std::nullopt;
  ++pos;
  int h = 0, mi = 0, sec = 0;
  if (!take_digits(s, pos, 2, h)) return std::nullopt;
  if (!take_char(s, pos, ':')) return std::nullopt;
  if (!take_digits(s, pos, 2, mi)) return std::nullopt;
  if (take_char(s, pos, ':')) {
    if (!take_digits(s, pos, 2, sec)) return std::nullopt;
    if (take_char(s, pos, '.') || take_char(s, pos, ',')) {
      bool any = false;
      while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
        ++pos;
        any = true;
      }
      if (!any) return std::nullopt;
    }
  }
  if (!valid_time(h, mi, sec)) return std::nullopt;

  EpochSeconds t = day + h * 3600 + mi * 60 + sec;
  if (pos < s.size()) {
    auto off = parse_offset(s, pos);
    if (!off || pos != s.size()) return std::nullopt;
    t -= *off;
  }
  return t;
}

// "Sun Nov 20 12:34:56 +0000 2022"
std::optional<EpochSeconds> parse_twitter(std::string_view s) {
  if (s.size() < 30) return std::nullopt;
  std::size_t pos = 4;  // skip weekday + space; weekday is not validated
  int mo = month_from_name(s.substr(pos, 3));
  if (mo == 0) return std::nullopt;
  pos += 3;
  if (!take_char(s, pos, ' ')) return std::nullopt;
  int d = 0, h = 0, mi = 0, sec = 0, y = 0;
  if (!take_digits(s, pos, 2, d)) return std::nullopt;
  if (!take_char(s, pos, ' ')) return std::nullopt;
  if (!take_digits(s, pos, 2, h)) return std::nullopt;
  if (!take_char(s, pos, ':')) return std::nullopt;
  if (!take_digits(s, pos, 2, mi)) return std::nullopt;
  if (!take_char(s, pos, ':')) return std::nullopt;
  if (!take_digits(s, pos, 2, sec)) return std::nullopt;
  if (!take_char(s, pos, ' ')) return std::nullopt;
  auto off = parse_offset(s, pos);
  if (!off) return std::nullopt;
  if (!take_char(s, pos, ' ')) return std::nullopt;
  if (!take_digits(s, pos, 4, y)) return std::nullopt;
  if (pos != s.size()) return std::nullopt;
  if (!valid_civil(y, mo, d) || !valid_time(h, mi, sec)) return std::nullopt;
  return days_from_civil(y, mo, d) * kSecondsPerDay + h * 3600 + mi * 60 + sec - *off;
}

}  // namespace

std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const int era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                       static_cast<unsigned>(d) - 1u;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return static_cast<std::int64_t>(era) * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& year, int& month, int& day) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  day = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  month = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
  year = static_cast<int>(y + (month <= 2));
}

bool valid_civil(int year, int month, int day) {
  if (month < 1 || month > 12 || day < 1) return false;
  static constexpr int days_in[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  int dim = days_in[month - 1];
  if (month == 2) {
    bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    if (leap) dim = 29;
  }
  return day <= dim;
}

std::optional<EpochSeconds> parse_timestamp(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (all_digits(s) || (s[0] == '-' && all_digits(s.substr(1)))) {
    EpochSeconds v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
  }
  if (s.size() >= 10 && s[4] == '-') return parse_iso(s);
  return parse_twitter(s);
}

std::optional<EpochSeconds> parse_date(std::string_view s) {
  s = trim(s);
  if (s.size() != 10) return std::nullopt;
  return parse_iso(s);
}

std::string format_utc(EpochSeconds t) {
  std::int64_t days = t / kSecondsPerDay;
  std::int64_t rem = t % kSecondsPerDay;
  if (rem < 0) {
    rem += kSecondsPerDay;
    --days;
  }
  int y, m, d;
  civil_from_days(days, y, m, d);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", y, m, d,
                static_cast<int>(rem / 3600), static_cast<int>((rem / 60) % 60),
                static_cast<int>(rem % 60));
  return buf;
}

}  // namespace strata
