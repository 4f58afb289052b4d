#pragma once

#include "etdq/model.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace etdq {

enum class DateOrder { MonthFirst, DayFirst };

enum class DateFormat {
  Year,           // 2015
  IsoDate,        // 2015-05-17
  IsoYearMonth,   // 2015-05
  SlashYmd,       // 2015/05/17
  DashNumeric,    // 05-17-2015 (month-first unless DayFirst)
  SlashNumeric,   // 05/17/2015
  MonthDayYear,   // May 17, 2015
  DayMonthYear,   // 17 May 2015
  MonthYear,      // May 2015
};

struct ParsedDate {
  DateParts parts;
  DateFormat format;
};

// Formats tried in order: YYYY, YYYY-MM-DD, YYYY-MM, YYYY/MM/DD, NN-NN-YYYY,
// NN/NN/YYYY, "Month DD, YYYY", "DD Month YYYY", "Month YYYY". Month names
// may be full or three-letter abbreviations. Calendar validity is enforced
// (Gregorian leap years). Surrounding whitespace is ignored.
std::optional<ParsedDate> parse_date(std::string_view value, DateOrder order = DateOrder::MonthFirst);

// Throws ParseError when no format matches.
DateParts canonicalize_year(std::string_view value, DateOrder order = DateOrder::MonthFirst);

// YYYY, YYYY-MM or YYYY-MM-DD.
std::string render_iso(const DateParts& parts);

bool is_iso_format(DateFormat f);

bool is_leap_year(int year);
int days_in_month(int year, int month);

}  // namespace etdq
