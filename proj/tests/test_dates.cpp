#include "etdq/dates.hpp"
#include "etdq/detection.hpp"
#include "etdq/errors.hpp"
#include "etdq/rng.hpp"

#include <gtest/gtest.h>

#include <chrono>
#include <cstdio>

using namespace etdq;
namespace chr = std::chrono;

namespace {

const char* kMonthNames[] = {"January", "February", "March",     "April",   "May",      "June",
                             "July",    "August",   "September", "October", "November", "December"};

std::string fmt(const char* f, int a, int b, int c) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// Every way an accepted format can spell a full date.
std::vector<std::pair<std::string, DateFormat>> spellings(int y, int m, int d, DateOrder order) {
  const bool mf = order == DateOrder::MonthFirst;
  const std::string month = kMonthNames[m - 1];
  return {
      {fmt("%04d-%02d-%02d", y, m, d), DateFormat::IsoDate},
      {fmt("%04d/%02d/%02d", y, m, d), DateFormat::SlashYmd},
      {mf ? fmt("%02d-%02d-%04d", m, d, y) : fmt("%02d-%02d-%04d", d, m, y), DateFormat::DashNumeric},
      {mf ? fmt("%d/%d/%04d", m, d, y) : fmt("%d/%d/%04d", d, m, y), DateFormat::SlashNumeric},
      {month + fmt(" %d, %04d", d, y, 0), DateFormat::MonthDayYear},
      {month.substr(0, 3) + fmt(". %d %04d", d, y, 0), DateFormat::MonthDayYear},
      {fmt("%d ", d, 0, 0) + month + fmt(" %04d", y, 0, 0), DateFormat::DayMonthYear},
  };
}

}  // namespace

TEST(Dates, Examples) {
  EXPECT_EQ(canonicalize_year("05-17-2015"), (DateParts{2015, 5, 17}));
  EXPECT_EQ(canonicalize_year("2015"), (DateParts{2015, std::nullopt, std::nullopt}));
  EXPECT_THROW(canonicalize_year("02-30-2015"), ParseError);
  EXPECT_THROW(canonicalize_year("20xx"), ParseError);
  EXPECT_EQ(canonicalize_year("17-05-2015", DateOrder::DayFirst), (DateParts{2015, 5, 17}));
  EXPECT_EQ(canonicalize_year(" May 2015 "), (DateParts{2015, 5, std::nullopt}));
  EXPECT_EQ(canonicalize_year("Sept. 3, 2011"), (DateParts{2011, 9, 3}));
  EXPECT_EQ(canonicalize_year("2015-05"), (DateParts{2015, 5, std::nullopt}));
}

TEST(Dates, Render) {
  EXPECT_EQ(render_iso({2015, 5, 17}), "2015-05-17");
  EXPECT_EQ(render_iso({2015, 5, std::nullopt}), "2015-05");
  EXPECT_EQ(render_iso({2015, std::nullopt, std::nullopt}), "2015");
}

TEST(Dates, LeapYears) {
  EXPECT_TRUE(parse_date("2000-02-29"));
  EXPECT_FALSE(parse_date("1900-02-29"));
  EXPECT_TRUE(parse_date("02/29/2016"));
  EXPECT_FALSE(parse_date("02/29/2019"));
}

// 1000 random valid dates in every format against std::chrono's calendar.
TEST(Dates, RandomDatesAgainstCalendarOracle) {
  Rng rng(2024);
  const auto first = chr::sys_days{chr::year{1880} / 1 / 1}.time_since_epoch().count();
  const auto last = chr::sys_days{chr::year{2023} / 12 / 31}.time_since_epoch().count();
  int mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto n = first + static_cast<long>(rng.index(static_cast<std::size_t>(last - first + 1)));
    const chr::year_month_day ymd{chr::sys_days{chr::days{n}}};
    const int y = static_cast<int>(ymd.year()), m = static_cast<int>(unsigned(ymd.month())),
              d = static_cast<int>(unsigned(ymd.day()));
    const DateParts want{y, m, d};
    for (auto order : {DateOrder::MonthFirst, DateOrder::DayFirst}) {
      for (const auto& [s, format] : spellings(y, m, d, order)) {
        const auto got = parse_date(s, order);
        if (!got || got->parts != want || got->format != format) {
          ++mismatches;
          ADD_FAILURE() << s;
        }
      }
    }
    // render/parse round trip is the identity
    const auto iso = render_iso(want);
    EXPECT_EQ(canonicalize_year(iso), want);
    EXPECT_EQ(render_iso(canonicalize_year(iso)), iso);
    EXPECT_FALSE(detect_year(iso, YearRange{}));
  }
  EXPECT_EQ(mismatches, 0);
}

// Validity of arbitrary (y, m, d) triples agrees with the oracle.
TEST(Dates, CalendarValidityAgainstOracle) {
  Rng rng(77);
  for (int i = 0; i < 3000; ++i) {
    const int y = 1880 + static_cast<int>(rng.index(200)), m = 1 + static_cast<int>(rng.index(13)),
              d = 1 + static_cast<int>(rng.index(32));
    const bool ok = chr::year_month_day{chr::year{y}, chr::month{static_cast<unsigned>(m)},
                                        chr::day{static_cast<unsigned>(d)}}
                        .ok();
    EXPECT_EQ(parse_date(fmt("%04d-%02d-%02d", y, m, d)).has_value(), ok) << y << "-" << m << "-" << d;
    if (m <= 12) EXPECT_EQ(days_in_month(y, m), static_cast<int>(unsigned(
                                                  chr::year_month_day_last{chr::year{y} / chr::month{unsigned(m)} / chr::last}.day())));
  }
}

TEST(Dates, RangeCheck) {
  const YearRange r;
  EXPECT_EQ(detect_year("1879", r)->kind, ErrorKind::IncorrectValue);
  EXPECT_EQ(detect_year("2024", r)->kind, ErrorKind::IncorrectValue);
  EXPECT_FALSE(detect_year("1880", r));
  EXPECT_FALSE(detect_year("2023", r));
  EXPECT_EQ(detect_year("05-17-2015", r)->kind, ErrorKind::NonCanonical);
  EXPECT_EQ(detect_year("20xx", r)->kind, ErrorKind::Unparseable);
  EXPECT_EQ(detect_year("2015-5-17", r)->kind, ErrorKind::NonCanonical);  // ISO needs zero padding
  EXPECT_FALSE(detect_year("2015-05", r));
}
