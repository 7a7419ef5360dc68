#pragma once

namespace asid::units {

inline constexpr double kGravity = 9.80665;  // m/s^2
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kMetersPerFoot = 0.3048;
inline constexpr double kMetersPerInch = 0.0254;

constexpr double feet_to_meters(double ft) { return ft * kMetersPerFoot; }
constexpr double meters_to_feet(double m) { return m / kMetersPerFoot; }
constexpr double kmh_to_mps(double kmh) { return kmh / 3.6; }
constexpr double mps_to_kmh(double mps) { return mps * 3.6; }

/// Gram-force to Newtons.
constexpr double gf_to_newtons(double gf) { return gf * 1e-3 * kGravity; }
constexpr double newtons_to_gf(double n) { return n / kGravity * 1e3; }

constexpr double degrees_to_radians(double deg) { return deg * kPi / 180.0; }

}  // namespace asid::units
