#pragma once

#include <cmath>
#include <cstdint>

namespace cdlab {

// Fixed validation and convergence constants. Values are documented in the
// CLI help text and README; changing them changes the library contract.
inline constexpr double kSymmetryTol = 1e-12;
inline constexpr double kPowerIterTol = 1e-10;
inline constexpr int kPowerIterCap = 100000;
inline constexpr double kGelfandTol = 1e-8;
inline constexpr int kGelfandCap = 60;
inline constexpr int kEnumerationCap = 8;  // n! conjugations beyond this blow up
inline constexpr double kClampFloor = 1e-300;

// (1+a)^k and (1+a)^k - 1, evaluated through log1p/expm1 so that no digits
// are lost for a ~ 1e-4, k ~ 1e4 (naive powering loses them exactly there).
inline double pow1p(double a, double k) { return std::exp(k * std::log1p(a)); }
inline double pow1p_m1(double a, double k) { return std::expm1(k * std::log1p(a)); }

}  // namespace cdlab
