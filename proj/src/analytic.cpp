#include "bistatic/analytic.hpp"

#include <cmath>

#include "bistatic/error.hpp"

namespace bistatic {

std::string_view to_string(RegimeChoice choice) {
  switch (choice) {
    case RegimeChoice::Auto: return "auto";
    case RegimeChoice::CoSite: return "cosite";
    case RegimeChoice::Lemniscate: return "lemniscate";
  }
  return "?";
}

void validate(const RadarSystem& sys) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw Error(ErrorKind::Domain, std::string(name) + " must be > 0");
  };
  positive(sys.transmit_power, "transmit power");
  positive(sys.gain_constant, "gain constant");
  positive(sys.wavelength, "wavelength");
  positive(sys.bandwidth, "bandwidth");
  positive(sys.effective_pulse_width(), "pulse width");
  if (!(sys.beamwidth_tx > 0.0 && sys.beamwidth_tx < kPi) || !(sys.beamwidth_rx > 0.0 && sys.beamwidth_rx < kPi)) {
    throw Error(ErrorKind::Domain, "beamwidths must lie in (0, pi)");
  }
  if (!(sys.noise_temperature >= 0.0) || !std::isfinite(sys.noise_temperature)) {
    throw Error(ErrorKind::Domain, "noise temperature must be >= 0");
  }
}

void validate(const Scene& scene) {
  if (!(scene.layout.baseline >= 0.0)) throw Error(ErrorKind::Domain, "baseline must be >= 0");
  if (!(scene.clutter_density >= 0.0)) throw Error(ErrorKind::Domain, "clutter density must be >= 0");
  if (!(scene.target_rcs > 0.0)) throw Error(ErrorKind::Domain, "mean target RCS must be > 0");
  if (!(scene.clutter_rcs > 0.0)) throw Error(ErrorKind::Domain, "mean clutter RCS must be > 0");
  if (!(scene.threshold >= 0.0)) throw Error(ErrorKind::Domain, "threshold must be >= 0");
}

double noise_power(double noise_temperature, double bandwidth) {
  if (!(noise_temperature >= 0.0) || !(bandwidth > 0.0)) {
    throw Error(ErrorKind::Domain, "noise_power requires T_s >= 0 and BW > 0");
  }
  return kBoltzmann * noise_temperature * bandwidth;
}

double noise_exponent(const RadarSystem& sys, const Scene& scene, double kappa) {
  const double h = los_propagation(sys.wavelength, kappa);
  const double ns = noise_power(sys.noise_temperature, sys.bandwidth);
  return scene.threshold * ns * sys.beamwidth_tx * sys.beamwidth_rx /
         (sys.transmit_power * sys.gain_constant * scene.target_rcs * h);
}

double clutter_suppression(const Scene& scene, GammaPolicy policy) {
  const double g = scene.threshold;
  const double num = policy == GammaPolicy::Consistent ? g * scene.clutter_rcs : scene.clutter_rcs;
  return num / (scene.target_rcs + g * scene.clutter_rcs);
}

namespace {

void require_kappa(double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw Error(ErrorKind::Domain, "kappa must be > 0");
}

double beam_cosite_area(const Scene& scene, const RadarSystem& sys, double kappa) {
  require_kappa(kappa);
  const double L = scene.layout.baseline;
  if (L == 0.0) throw Error(ErrorKind::Domain, "beam cell is unbounded for a monostatic layout (L = 0)");
  if (classify_regime(L, kappa) != Regime::CoSite) {
    throw Error(ErrorKind::Domain, "co-site closed form requires L < 2 kappa");
  }
  // kappa^2 dtheta^2 / sin(beta_max) with sin(beta_max) ~ L / kappa.
  return kappa * kappa * kappa * sys.beamwidth_tx * sys.beamwidth_rx / L;
}

double beam_lemniscate_area(const Scene& scene, const RadarSystem& sys, double kappa) {
  require_kappa(kappa);
  if (classify_regime(scene.layout.baseline, kappa) != Regime::Lemniscate) {
    throw Error(ErrorKind::Domain, "lemniscate closed form requires L == 2 kappa");
  }
  return kappa * kappa * sys.beamwidth_tx * sys.beamwidth_rx / kLemniscateSinBeta;
}

}  // namespace

double clutter_exponent_beam_cosite(const Scene& scene, const RadarSystem& sys, double kappa, GammaPolicy policy) {
  return scene.clutter_density * beam_cosite_area(scene, sys, kappa) * clutter_suppression(scene, policy);
}

double clutter_exponent_beam_lemniscate(const Scene& scene, const RadarSystem& sys, double kappa,
                                        GammaPolicy policy) {
  return scene.clutter_density * beam_lemniscate_area(scene, sys, kappa) * clutter_suppression(scene, policy);
}

double range_cell_area(const Scene& scene, const RadarSystem& sys, double kappa, const AnalyticOptions& opts) {
  require_kappa(kappa);
  const double L = scene.layout.baseline;
  if (std::abs(sys.beamwidth_tx - sys.beamwidth_rx) > 1e-12 * sys.beamwidth_rx) {
    throw Error(ErrorKind::Domain, "range-limited closed form assumes equal tx/rx beamwidths");
  }
  if (classify_regime(L, kappa) == Regime::Split) {
    throw Error(ErrorKind::Domain, "range-limited closed form requires L <= 2 kappa");
  }
  const double width = kSpeedOfLight * sys.effective_pulse_width() * sys.beamwidth_rx;
  if (opts.range_area == RangeArea::Verbatim) {
    const double km = opts.kappa_m.value_or(kappa);
    if (km < L) throw Error(ErrorKind::Domain, "kappa_m must be >= L");
    return width * kappa * kappa / (2.0 * (km + std::sqrt(km * km - L * L)));
  }
  const double s = sin_beta_max(L, kappa);
  const double cos2 = 1.0 - s * s;
  if (!(cos2 > CellLimits{}.min_cos2_beta)) {
    throw Error(ErrorKind::UnboundedCell, "cos^2(beta_max) vanishes; range cell unbounded");
  }
  return width * kappa / (2.0 * cos2);
}

double clutter_exponent_range(const Scene& scene, const RadarSystem& sys, double kappa, const AnalyticOptions& opts) {
  return scene.clutter_density * range_cell_area(scene, sys, kappa, opts) * clutter_suppression(scene, opts.gamma);
}

double closed_form_cell_area(const RadarSystem& sys, const Scene& scene, double kappa, CellKind cell, Regime regime,
                         const AnalyticOptions& opts) {
  if (cell == CellKind::Range) return range_cell_area(scene, sys, kappa, opts);
  switch (regime) {
    case Regime::CoSite: return beam_cosite_area(scene, sys, kappa);
    case Regime::Lemniscate: return beam_lemniscate_area(scene, sys, kappa);
    case Regime::Split: break;
  }
  throw Error(ErrorKind::SplitRegimeUnsupported, "no closed form for L > 2 kappa");
}

Regime resolve_regime(const Scene& scene, double kappa, RegimeChoice choice) {
  const Regime actual = classify_regime(scene.layout.baseline, kappa);
  if (actual == Regime::Split) {
    throw Error(ErrorKind::SplitRegimeUnsupported, "L > 2 kappa: the Cassini oval splits into two lobes");
  }
  if (choice == RegimeChoice::CoSite && actual != Regime::CoSite) {
    throw Error(ErrorKind::Domain, "cosite regime requested but L == 2 kappa");
  }
  if (choice == RegimeChoice::Lemniscate && actual != Regime::Lemniscate) {
    throw Error(ErrorKind::Domain, "lemniscate regime requested but L != 2 kappa");
  }
  return actual;
}

PdcBreakdown pdc(const RadarSystem& sys, const Scene& scene, double kappa, CellKind cell, RegimeChoice regime,
                 const AnalyticOptions& opts) {
  validate(sys);
  validate(scene);
  require_kappa(kappa);
  PdcBreakdown out;
  out.cell = cell;
  out.regime = resolve_regime(scene, kappa, regime);
  out.noise_exponent = noise_exponent(sys, scene, kappa);
  if (scene.clutter_density == 0.0) {
    out.clutter_exponent = 0.0;
  } else if (cell == CellKind::Range) {
    out.clutter_exponent = clutter_exponent_range(scene, sys, kappa, opts);
  } else if (out.regime == Regime::Lemniscate) {
    out.clutter_exponent = clutter_exponent_beam_lemniscate(scene, sys, kappa, opts.gamma);
  } else {
    out.clutter_exponent = clutter_exponent_beam_cosite(scene, sys, kappa, opts.gamma);
  }
  out.pdc = std::exp(-(out.noise_exponent + out.clutter_exponent));
  return out;
}

}  // namespace bistatic
