#include "bistatic/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bistatic/constants.hpp"
#include "bistatic/error.hpp"

namespace bistatic {

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::CoSite: return "CoSite";
    case Regime::Lemniscate: return "Lemniscate";
    case Regime::Split: return "Split";
  }
  return "?";
}

std::string_view to_string(CellKind kind) {
  return kind == CellKind::Beamwidth ? "beam" : "range";
}

namespace {

void require_inputs(double baseline, double kappa) {
  if (!(baseline >= 0.0) || !std::isfinite(baseline)) {
    throw Error(ErrorKind::Domain, "baseline length must be finite and >= 0");
  }
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw Error(ErrorKind::Domain, "bistatic range must be finite and > 0");
  }
}

}  // namespace

Regime classify_regime(double baseline, double kappa) {
  require_inputs(baseline, kappa);
  const double two_kappa = 2.0 * kappa;
  if (std::abs(baseline - two_kappa) <= two_kappa * kRegimeTolerance) return Regime::Lemniscate;
  if (baseline < two_kappa) return Regime::CoSite;
  return Regime::Split;
}

double solve_radial(double baseline, double kappa, double theta) {
  const Regime regime = classify_regime(baseline, kappa);
  if (regime == Regime::Split) {
    throw Error(ErrorKind::SplitRegimeUnsupported,
                "L > 2 kappa: the Cassini oval splits into two lobes");
  }
  if (baseline == 0.0) return kappa;

  if (regime == Regime::Lemniscate) {
    const double c2 = std::cos(2.0 * theta);
    if (c2 < 0.0) {
      throw Error(ErrorKind::NoTarget, "no lemniscate point at this polar angle");
    }
    return baseline * std::sqrt(0.5 * c2);
  }

  // u^2 + b u + c = 0 with u = r_t^2.
  const double l2 = baseline * baseline;
  const double k2 = kappa * kappa;
  const double b = -0.5 * l2 * std::cos(2.0 * theta);
  const double c = (0.25 * l2 - k2) * (0.25 * l2 + k2);  // L^4/16 - kappa^4 < 0
  const double disc = std::sqrt(b * b - 4.0 * c);
  // Pick the algebraically stable form of the nonnegative root.
  const double u = b <= 0.0 ? 0.5 * (disc - b) : (-2.0 * c) / (b + disc);
  return std::sqrt(std::max(u, 0.0));
}

GeometrySolution solve_geometry(double baseline, double kappa, double theta) {
  GeometrySolution g;
  g.radial_distance = solve_radial(baseline, kappa, theta);
  g.regime = classify_regime(baseline, kappa);
  const double r = g.radial_distance;
  g.target = {r * std::cos(theta), r * std::sin(theta)};

  if (baseline == 0.0) {
    g.tx_range = kappa;
    g.rx_range = kappa;
    g.cos_beta = 1.0;
    g.sin_beta = 0.0;
    g.bistatic_angle = 0.0;
    return g;
  }

  const double base = r * r + 0.25 * baseline * baseline;
  const double cross = r * baseline * std::cos(theta);
  const double tx2 = std::max(base + cross, 0.0);
  const double rx2 = std::max(base - cross, 0.0);
  g.tx_range = std::sqrt(tx2);
  g.rx_range = std::sqrt(rx2);

  double cos_beta = (tx2 + rx2 - baseline * baseline) / (2.0 * kappa * kappa);
  if (cos_beta > 1.0 + kCosBetaClamp || cos_beta < -1.0 - kCosBetaClamp || !std::isfinite(cos_beta)) {
    throw Error(ErrorKind::NumericalFailure, "cos(beta) = " + std::to_string(cos_beta) + " out of range");
  }
  cos_beta = std::clamp(cos_beta, -1.0, 1.0);
  // Twice the triangle area over R_tx R_rx.
  const double sin_beta = std::min(baseline * r * std::abs(std::sin(theta)) / (kappa * kappa), 1.0);
  g.cos_beta = cos_beta;
  g.sin_beta = sin_beta;
  g.bistatic_angle = std::atan2(sin_beta, cos_beta);
  return g;
}

double sin_beta_max(double baseline, double kappa) {
  require_inputs(baseline, kappa);
  if (classify_regime(baseline, kappa) == Regime::Split) {
    throw Error(ErrorKind::Domain, "sin_beta_max requires L <= 2 kappa");
  }
  const double q = baseline * baseline / (kappa * kappa);
  return std::sqrt(std::max(q - 0.25 * q * q, 0.0));
}

double los_propagation(double wavelength, double kappa) {
  if (!(wavelength > 0.0) || !(kappa > 0.0)) {
    throw Error(ErrorKind::Domain, "wavelength and bistatic range must be > 0");
  }
  const double k2 = kappa * kappa;
  return wavelength * wavelength / (kFourPiCubed * k2 * k2);
}

double los_propagation(double wavelength, double tx_range, double rx_range) {
  if (!(wavelength > 0.0) || !(tx_range > 0.0) || !(rx_range > 0.0)) {
    throw Error(ErrorKind::Domain, "wavelength and ranges must be > 0");
  }
  return wavelength * wavelength / (kFourPiCubed * (tx_range * tx_range) * (rx_range * rx_range));
}

double cell_area_beamwidth(double kappa, double beamwidth_tx, double beamwidth_rx, double beta,
                           const CellLimits& limits) {
  const double s = std::sin(beta);
  if (!(s > limits.min_sin_beta)) {
    throw Error(ErrorKind::UnboundedCell, "beams are parallel (sin beta <= threshold)");
  }
  return kappa * kappa * beamwidth_tx * beamwidth_rx / s;
}

double cell_area_range(double pulse_width, double min_range, double beamwidth_rx, double beta,
                       const CellLimits& limits) {
  const double c = std::cos(beta);
  const double c2 = c * c;
  if (!(c2 > limits.min_cos2_beta)) {
    throw Error(ErrorKind::UnboundedCell, "range cell is unbounded (cos^2 beta <= threshold)");
  }
  return kSpeedOfLight * pulse_width * min_range * beamwidth_rx / (2.0 * c2);
}

}  // namespace bistatic
