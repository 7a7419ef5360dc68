#include "asid/decimal.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "asid/error.hpp"

namespace asid {

std::string format_fixed(double value, int digits) {
  if (digits < 0 || digits > 15) throw DomainError("decimal digits must lie in 0..15");
  if (!std::isfinite(value)) return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");

  const bool negative = value < 0.0;
  // 1074 fractional digits hold the exact decimal expansion of any double,
  // so the digit after the cut decides the rounding without double rounding.
  constexpr int kExactDigits = 1074;
  std::string exact(1500, '\0');
  const int n = std::snprintf(exact.data(), exact.size(), "%.*f", kExactDigits, std::fabs(value));
  exact.resize(static_cast<std::size_t>(n));

  const auto dot = exact.find('.');
  const std::size_t keep = digits == 0 ? dot : dot + 1 + static_cast<std::size_t>(digits);
  const bool round_up = exact[dot + 1 + static_cast<std::size_t>(digits)] >= '5';
  std::string out = exact.substr(0, keep);

  if (round_up) {
    int i = static_cast<int>(out.size()) - 1;
    for (; i >= 0; --i) {
      if (out[static_cast<std::size_t>(i)] == '.') continue;
      if (out[static_cast<std::size_t>(i)] == '9') {
        out[static_cast<std::size_t>(i)] = '0';
      } else {
        ++out[static_cast<std::size_t>(i)];
        break;
      }
    }
    if (i < 0) out.insert(out.begin(), '1');
  }
  return negative ? "-" + out : out;
}

}  // namespace asid
