#include "etdq/dates.hpp"

#include "etdq/errors.hpp"
#include "etdq/text.hpp"

#include <array>
#include <cstdio>
#include <regex>

namespace etdq {

bool is_leap_year(int year) { return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0; }

int days_in_month(int year, int month) {
  static constexpr std::array<int, 12> days = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month < 1 || month > 12) return 0;
  if (month == 2 && is_leap_year(year)) return 29;
  return days[static_cast<std::size_t>(month - 1)];
}

bool is_iso_format(DateFormat f) {
  return f == DateFormat::Year || f == DateFormat::IsoDate || f == DateFormat::IsoYearMonth;
}

namespace {

std::optional<int> month_from_name(const std::string& name) {
  static constexpr std::array<const char*, 12> names = {"january", "february", "march",     "april",
                                                        "may",     "june",     "july",      "august",
                                                        "september", "october", "november", "december"};
  auto lowered = text::to_lower(name);
  if (!lowered.empty() && lowered.back() == '.') lowered.pop_back();
  for (std::size_t i = 0; i < names.size(); ++i) {
    const std::string full = names[i];
    if (lowered == full || (lowered.size() == 3 && full.compare(0, 3, lowered) == 0) ||
        (i == 8 && lowered == "sept")) {
      return static_cast<int>(i + 1);
    }
  }
  return std::nullopt;
}

std::optional<DateParts> make(int year, std::optional<int> month, std::optional<int> day) {
  if (year < 1) return std::nullopt;
  if (month && (*month < 1 || *month > 12)) return std::nullopt;
  if (day && (!month || *day < 1 || *day > days_in_month(year, *month))) return std::nullopt;
  return DateParts{year, month, day};
}

int to_int(const std::ssub_match& m) { return std::stoi(m.str()); }

}  // namespace

std::optional<ParsedDate> parse_date(std::string_view value, DateOrder order) {
  const std::string s(text::trim(value));

  static const std::regex year_re(R"((\d{4}))");
  static const std::regex iso_re(R"((\d{4})-(\d{1,2})-(\d{1,2}))");
  static const std::regex iso_ym_re(R"((\d{4})-(\d{1,2}))");
  static const std::regex slash_ymd_re(R"((\d{4})/(\d{1,2})/(\d{1,2}))");
  static const std::regex dash_num_re(R"((\d{1,2})-(\d{1,2})-(\d{4}))");
  static const std::regex slash_num_re(R"((\d{1,2})/(\d{1,2})/(\d{4}))");
  static const std::regex mdy_re(R"(([A-Za-z]+\.?)\s+(\d{1,2}),?\s+(\d{4}))");
  static const std::regex dmy_re(R"((\d{1,2})\s+([A-Za-z]+\.?),?\s+(\d{4}))");
  static const std::regex my_re(R"(([A-Za-z]+\.?),?\s+(\d{4}))");

  std::smatch m;
  auto done = [](std::optional<DateParts> p, DateFormat f) -> std::optional<ParsedDate> {
    if (!p) return std::nullopt;
    return ParsedDate{*p, f};
  };

  if (std::regex_match(s, m, year_re)) return done(make(to_int(m[1]), {}, {}), DateFormat::Year);
  if (std::regex_match(s, m, iso_re)) {
    return done(make(to_int(m[1]), to_int(m[2]), to_int(m[3])), DateFormat::IsoDate);
  }
  if (std::regex_match(s, m, iso_ym_re)) {
    return done(make(to_int(m[1]), to_int(m[2]), {}), DateFormat::IsoYearMonth);
  }
  if (std::regex_match(s, m, slash_ymd_re)) {
    return done(make(to_int(m[1]), to_int(m[2]), to_int(m[3])), DateFormat::SlashYmd);
  }
  const bool month_first = order == DateOrder::MonthFirst;
  if (std::regex_match(s, m, dash_num_re)) {
    const int a = to_int(m[1]), b = to_int(m[2]);
    return done(make(to_int(m[3]), month_first ? a : b, month_first ? b : a), DateFormat::DashNumeric);
  }
  if (std::regex_match(s, m, slash_num_re)) {
    const int a = to_int(m[1]), b = to_int(m[2]);
    return done(make(to_int(m[3]), month_first ? a : b, month_first ? b : a), DateFormat::SlashNumeric);
  }
  if (std::regex_match(s, m, mdy_re)) {
    const auto month = month_from_name(m[1].str());
    if (!month) return std::nullopt;
    return done(make(to_int(m[3]), *month, to_int(m[2])), DateFormat::MonthDayYear);
  }
  if (std::regex_match(s, m, dmy_re)) {
    const auto month = month_from_name(m[2].str());
    if (!month) return std::nullopt;
    return done(make(to_int(m[3]), *month, to_int(m[1])), DateFormat::DayMonthYear);
  }
  if (std::regex_match(s, m, my_re)) {
    const auto month = month_from_name(m[1].str());
    if (!month) return std::nullopt;
    return done(make(to_int(m[2]), *month, {}), DateFormat::MonthYear);
  }
  return std::nullopt;
}

DateParts canonicalize_year(std::string_view value, DateOrder order) {
  auto parsed = parse_date(value, order);
  if (!parsed) throw ParseError("unparseable date '" + std::string(value) + "'");
  return parsed->parts;
}

std::string render_iso(const DateParts& parts) {
  char buf[32];
  if (parts.month && parts.day) {
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", parts.year, *parts.month, *parts.day);
  } else if (parts.month) {
    std::snprintf(buf, sizeof buf, "%04d-%02d", parts.year, *parts.month);
  } else {
    std::snprintf(buf, sizeof buf, "%04d", parts.year);
  }
  return buf;
}

}  // namespace etdq
