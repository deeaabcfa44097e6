#include "normgraph/date.hpp"

#include <cstdio>

#include "normgraph/error.hpp"

namespace normgraph {

namespace {

bool all_digits(std::string_view s) {
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return !s.empty();
}

int to_int(std::string_view s) {
  int v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

}  // namespace

Date Date::from_ymd(int year, unsigned month, unsigned day) {
  std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                                  std::chrono::day{day}};
  if (year < 1 || year > 9999 || !ymd.ok()) {
    throw Error(ErrorCode::InvalidArgument, "invalid calendar date " + std::to_string(year) +
                                                "-" + std::to_string(month) + "-" +
                                                std::to_string(day));
  }
  return Date(std::chrono::sys_days{ymd});
}

std::optional<Date> Date::parse(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  auto y = text.substr(0, 4), m = text.substr(5, 2), d = text.substr(8, 2);
  if (!all_digits(y) || !all_digits(m) || !all_digits(d)) return std::nullopt;
  std::chrono::year_month_day ymd{std::chrono::year{to_int(y)},
                                  std::chrono::month{static_cast<unsigned>(to_int(m))},
                                  std::chrono::day{static_cast<unsigned>(to_int(d))}};
  if (to_int(y) < 1 || !ymd.ok()) return std::nullopt;
  return Date(std::chrono::sys_days{ymd});
}

Date Date::parse_or_throw(std::string_view text) {
  auto d = parse(text);
  if (!d) {
    throw Error(ErrorCode::InvalidArgument,
                "expected ISO date YYYY-MM-DD, got '" + std::string(text) + "'");
  }
  return *d;
}

std::string Date::to_string() const {
  std::chrono::year_month_day ymd{days_};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

}  // namespace normgraph
