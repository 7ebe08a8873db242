#pragma once

#include <ostream>
#include <string_view>

namespace strata {

/// Writes one CSV field with RFC-4180 quoting: quoted only when the field
/// contains a comma, quote, CR, or LF; embedded quotes are doubled.
inline void put_csv_field(std::ostream& out, std::string_view field) {
  const bool needs_quotes = field.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!needs_quotes) {
    out << field;
    return;
  }
  out << '"';
  for (const char c : field) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

}  // namespace strata
