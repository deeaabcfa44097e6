#pragma once

#include <chrono>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace normgraph {

// A proleptic Gregorian calendar date, day granularity.
class Date {
 public:
  constexpr Date() = default;
  constexpr explicit Date(std::chrono::sys_days days) : days_(days) {}

  // Throws Error(InvalidArgument) if the triple is not a valid calendar date
  // or the year falls outside 1..9999.
  static Date from_ymd(int year, unsigned month, unsigned day);

  // Strict ISO `YYYY-MM-DD`. Returns nullopt on any deviation.
  static std::optional<Date> parse(std::string_view text);
  // Like parse() but throws Error(InvalidArgument).
  static Date parse_or_throw(std::string_view text);

  std::string to_string() const;

  Date plus_days(int n) const { return Date(days_ + std::chrono::days(n)); }
  int days_since_epoch() const {
    return static_cast<int>(days_.time_since_epoch().count());
  }
  std::chrono::sys_days sys_days() const { return days_; }

  friend constexpr auto operator<=>(const Date&, const Date&) = default;

 private:
  std::chrono::sys_days days_{};
};

}  // namespace normgraph
