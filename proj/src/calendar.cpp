// Apache License, Version 2.0, refer to LICENSE.txt

#include "rw2cf/calendar.hpp"

#include <cctype>
#include <cstdio>

#include "rw2cf/errors.hpp"

namespace rw2cf {

CalendarMonth CalendarMonth::plus_months(int n) const {
  int zero_based = year * 12 + (month - 1) + n;
  int y = zero_based / 12;
  int m = zero_based % 12;
  if (m < 0) {
    m += 12;
    y -= 1;
  }
  return {y, m + 1};
}

int CalendarMonth::months_since(const CalendarMonth& from) const {
  return (year - from.year) * 12 + (month - from.month);
}

std::string CalendarMonth::str() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d", year, month);
  return buf;
}

CalendarMonth CalendarMonth::parse(const std::string& text) {
  if (text.size() != 7 || text[4] != '-') {
    throw ParseError("bad month '" + text + "', expected YYYY-MM");
  }
  for (int i : {0, 1, 2, 3, 5, 6}) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw ParseError("bad month '" + text + "', expected YYYY-MM");
    }
  }
  int year = std::stoi(text.substr(0, 4));
  int month = std::stoi(text.substr(5, 2));
  if (month < 1 || month > 12) {
    throw ParseError("month out of range in '" + text + "'");
  }
  return {year, month};
}

}  // namespace rw2cf
