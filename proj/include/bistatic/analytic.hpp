#pragma once

#include <optional>
#include <string_view>

#include "bistatic/constants.hpp"
#include "bistatic/geometry.hpp"

namespace bistatic {

/// Transmitter/receiver hardware. Defaults follow the reference scenario
/// (10 W, 5 degree beams, 5 mm wavelength, 300 K, 2 GHz).
struct RadarSystem {
  double transmit_power = 10.0;            // W
  double gain_constant = 1.0;              // A_0, dimensionless
  double beamwidth_tx = degrees(5.0);      // rad
  double beamwidth_rx = degrees(5.0);      // rad
  double wavelength = 0.005;               // m
  double noise_temperature = 300.0;        // K
  double bandwidth = 2e9;                  // Hz
  std::optional<double> pulse_width;       // s, defaults to 1 / bandwidth

  double effective_pulse_width() const { return pulse_width ? *pulse_width : 1.0 / bandwidth; }
};

struct Scene {
  BistaticLayout layout{5.0};
  double clutter_density = 0.001;  // rho, 1/m^2
  double target_rcs = 1.0;         // mean sigma_t, m^2
  double clutter_rcs = 1.0;        // mean sigma_c, m^2
  double threshold = 1.0;          // gamma, linear
};

/// Whether the clutter term carries the gamma factor produced by the
/// Swerling-1/exponential integral (Consistent) or the gamma-less form some
/// published closed forms print (Verbatim).
enum class GammaPolicy { Consistent, Verbatim };

/// Range-cell area used by the range-limited closed form.
///   Derived:  c dtau dTheta kappa / (2 cos^2 beta_max), cos^2 from sin_beta_max()
///   Verbatim: c dtau dTheta kappa^2 / (2 (kappa_m + sqrt(kappa_m^2 - L^2)))
enum class RangeArea { Derived, Verbatim };

enum class RegimeChoice { Auto, CoSite, Lemniscate };

std::string_view to_string(RegimeChoice choice);

struct AnalyticOptions {
  GammaPolicy gamma = GammaPolicy::Consistent;
  RangeArea range_area = RangeArea::Derived;
  std::optional<double> kappa_m;  // Verbatim range area only; defaults to kappa

  static AnalyticOptions verbatim() { return {GammaPolicy::Verbatim, RangeArea::Verbatim, std::nullopt}; }
};

struct PdcBreakdown {
  double noise_exponent = 0.0;
  double clutter_exponent = 0.0;
  double pdc = 1.0;
  Regime regime = Regime::CoSite;
  CellKind cell = CellKind::Beamwidth;
};

void validate(const RadarSystem& sys);
void validate(const Scene& scene);

/// k_B T_s BW.
double noise_power(double noise_temperature, double bandwidth);

/// gamma N_s dtheta_tx dtheta_rx / (P_tx A_0 mean_sigma_t h(kappa)). Grows as kappa^4.
double noise_exponent(const RadarSystem& sys, const Scene& scene, double kappa);

/// Fraction of the clutter cell that suppresses detection,
/// E[1 - exp(-gamma sigma_c / mean_sigma_t)] = gamma s_c / (s_t + gamma s_c) for exponential clutter.
double clutter_suppression(const Scene& scene, GammaPolicy policy = GammaPolicy::Consistent);

/// rho kappa^3 dtheta_tx dtheta_rx gamma s_c / (L (s_t + gamma s_c)); requires 0 < L < 2 kappa.
double clutter_exponent_beam_cosite(const Scene& scene, const RadarSystem& sys, double kappa,
                                    GammaPolicy policy = GammaPolicy::Consistent);

/// Lemniscate form with sqrt(3) in place of sin(beta_max); requires L == 2 kappa.
double clutter_exponent_beam_lemniscate(const Scene& scene, const RadarSystem& sys, double kappa,
                                        GammaPolicy policy = GammaPolicy::Consistent);

/// Range-limited cell; requires dtheta_tx == dtheta_rx and L <= 2 kappa.
double range_cell_area(const Scene& scene, const RadarSystem& sys, double kappa,
                       const AnalyticOptions& opts = {});
double clutter_exponent_range(const Scene& scene, const RadarSystem& sys, double kappa,
                              const AnalyticOptions& opts = {});

/// Cell area the closed form integrates the PPP over, so that
/// clutter exponent == rho * area * clutter_suppression().
double closed_form_cell_area(const RadarSystem& sys, const Scene& scene, double kappa, CellKind cell,
                         Regime regime, const AnalyticOptions& opts = {});

/// Resolves RegimeChoice::Auto against the layout; rejects Split and
/// choices inconsistent with (L, kappa).
Regime resolve_regime(const Scene& scene, double kappa, RegimeChoice choice);

PdcBreakdown pdc(const RadarSystem& sys, const Scene& scene, double kappa, CellKind cell = CellKind::Beamwidth,
                 RegimeChoice regime = RegimeChoice::Auto, const AnalyticOptions& opts = {});

}  // namespace bistatic
