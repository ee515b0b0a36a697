#pragma once

#include <string_view>

namespace bistatic {

enum class Regime { CoSite, Lemniscate, Split };

std::string_view to_string(Regime regime);

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Transmitter and receiver on the x axis, separated by the baseline length.
///
/// The transmitter sits at (-L/2, 0) and the receiver at (+L/2, 0), so that a
/// target at polar angle 0 lies on the receiver side and has R_tx > R_rx.
struct BistaticLayout {
  double baseline = 0.0;  // m

  Point transmitter() const { return {-0.5 * baseline, 0.0}; }
  Point receiver() const { return {0.5 * baseline, 0.0}; }
};

struct TargetPlacement {
  double bistatic_range = 0.0;  // kappa, m
  double polar_angle = 0.0;     // theta_t, rad
};

struct GeometrySolution {
  double radial_distance = 0.0;  // r_t, m
  double tx_range = 0.0;         // R_tx, m
  double rx_range = 0.0;         // R_rx, m
  double bistatic_angle = 0.0;   // beta, rad in [0, pi]
  double sin_beta = 0.0;         // from the triangle area, accurate near beta = 0
  double cos_beta = 1.0;
  Regime regime = Regime::CoSite;
  Point target;

  double min_range() const { return tx_range < rx_range ? tx_range : rx_range; }
};

enum class CellKind { Beamwidth, Range };

std::string_view to_string(CellKind kind);

struct ResolutionCellSpec {
  CellKind kind = CellKind::Beamwidth;
  double beamwidth_tx = 0.0;  // rad
  double beamwidth_rx = 0.0;  // rad
  double pulse_width = 0.0;   // s, range cell only
};

/// Thresholds below which a resolution cell is reported as unbounded.
struct CellLimits {
  double min_sin_beta = 1e-6;
  double min_cos2_beta = 1e-6;
};

Regime classify_regime(double baseline, double kappa);

/// Polar radius of the target on the Cassini oval for (L, kappa, theta_t).
///
/// CoSite: the quartic is a quadratic in u = r_t^2 whose constant term
/// L^4/16 - kappa^4 is negative, so exactly one root is nonnegative.
/// Lemniscate: r_t = L sqrt(cos(2 theta_t) / 2), NoTarget where cos(2 theta_t) < 0.
double solve_radial(double baseline, double kappa, double theta);

GeometrySolution solve_geometry(double baseline, double kappa, double theta);

inline GeometrySolution solve_geometry(const BistaticLayout& layout, const TargetPlacement& target) {
  return solve_geometry(layout.baseline, target.bistatic_range, target.polar_angle);
}

/// sqrt(L^2/kappa^2 - L^4/(4 kappa^4)), attained at theta_t = pi/2.
double sin_beta_max(double baseline, double kappa);

/// LOS two-way propagation factor lambda^2 / ((4 pi)^3 kappa^4).
double los_propagation(double wavelength, double kappa);

/// Same factor written with the one-way ranges, lambda^2 / ((4 pi)^3 R_tx^2 R_rx^2).
double los_propagation(double wavelength, double tx_range, double rx_range);

double cell_area_beamwidth(double kappa, double beamwidth_tx, double beamwidth_rx, double beta,
                           const CellLimits& limits = {});

double cell_area_range(double pulse_width, double min_range, double beamwidth_rx, double beta,
                       const CellLimits& limits = {});

}  // namespace bistatic
