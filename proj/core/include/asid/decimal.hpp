#pragma once

#include <string>

namespace asid {

/// Fixed-point rendering of `value` with `digits` decimals, rounding half away
/// from zero on the exact binary value (the Arduino `print(value, n)` rule).
/// A leading '-' is printed for any negative input, so -0.04 renders as "-0.0".
std::string format_fixed(double value, int digits);

}  // namespace asid
