#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace asid {

/// Broken-down UTC time, second resolution. Models the DS3231 RTC.
struct DateTime {
  int year = 2021;
  int month = 6;
  int day = 1;
  int hour = 10;
  int minute = 0;
  int second = 0;

  bool operator==(const DateTime&) const = default;

  std::int64_t to_epoch_seconds() const;
  static DateTime from_epoch_seconds(std::int64_t seconds);

  /// Accepts `YYYY-MM-DDTHH:MM:SS` (a trailing `Z` is allowed).
  static DateTime parse_iso(std::string_view text);
  std::string iso() const;  // YYYY-MM-DDTHH:MM:SSZ

  std::string date_str() const;  // DD.MM.YYYY
  std::string time_str() const;  // HH:MM:SS

  DateTime plus_seconds(std::int64_t seconds) const {
    return from_epoch_seconds(to_epoch_seconds() + seconds);
  }
};

}  // namespace asid
