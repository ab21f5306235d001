// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef RW2CF_CALENDAR_HPP
#define RW2CF_CALENDAR_HPP

#include <compare>
#include <string>

namespace rw2cf {

/// A calendar month (year, month in 1..12). Ordered by (year, month).
struct CalendarMonth {
  int year = 0;
  int month = 1;

  auto operator<=>(const CalendarMonth&) const = default;

  CalendarMonth plus_months(int n) const;

  /// Signed month count from `from` to this (0 when equal).
  int months_since(const CalendarMonth& from) const;

  std::string str() const;  // "YYYY-MM"

  /// Parses a strict "YYYY-MM" string; throws ParseError otherwise.
  static CalendarMonth parse(const std::string& text);
};

}  // namespace rw2cf

#endif
