#pragma once

#include <numbers>

namespace bistatic {

// CODATA 2018 exact values.
inline constexpr double kSpeedOfLight = 299'792'458.0;   // m/s
inline constexpr double kBoltzmann = 1.380649e-23;       // J/K

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kFourPiCubed = (4.0 * kPi) * (4.0 * kPi) * (4.0 * kPi);

// Value carried by the lemniscate closed form in place of sin(beta_max). It is
// not a valid sine; the geometric value at L = 2*kappa is sin_beta_max() == 0.
inline constexpr double kLemniscateSinBeta = std::numbers::sqrt3;

// Regime classification tolerance on |L - 2 kappa| / (2 kappa).
inline constexpr double kRegimeTolerance = 1e-9;

// Clamp window for cos(beta) before it is reported as a numerical failure.
inline constexpr double kCosBetaClamp = 1e-9;

inline constexpr double degrees(double deg) { return deg * kPi / 180.0; }

}  // namespace bistatic
