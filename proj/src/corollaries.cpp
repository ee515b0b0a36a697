#include "bistatic/corollaries.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <vector>

#include "bistatic/error.hpp"

namespace bistatic {

double DesignValue::relative_difference() const { return std::abs(numeric - closed_form) / std::abs(closed_form); }

double DesignValue::verbatim_relative_difference() const {
  return std::abs(verbatim - closed_form) / std::abs(closed_form);
}

namespace {

constexpr double kKappaUpper = 1e6;

// Bisection on x = ln(value) until the bracket is ~1e-14 relative.
template <class F>
double log_bisect(F f, double lo, double hi, const char* what) {
  double xlo = std::log(lo), xhi = std::log(hi);
  const double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) throw Error(ErrorKind::NoCrossing, what);
  auto g = [&](double x) { return f(std::exp(x)); };
  boost::math::tools::eps_tolerance<double> tol(48);
  std::uintmax_t iters = 400;
  const auto [a, b] = boost::math::tools::bisect(g, xlo, xhi, tol, iters);
  return std::exp(0.5 * (a + b));
}

void require_clutter_and_noise(const RadarSystem& sys, const Scene& scene) {
  validate(sys);
  validate(scene);
  if (!(scene.clutter_density > 0.0)) throw Error(ErrorKind::Domain, "requires clutter density > 0");
  if (!(sys.noise_temperature > 0.0)) throw Error(ErrorKind::Domain, "requires noise power > 0");
  if (!(scene.layout.baseline > 0.0)) throw Error(ErrorKind::Domain, "requires a bistatic layout (L > 0)");
}

// clear of the lemniscate tolerance band
double lower_kappa(const Scene& scene) { return 0.5 * scene.layout.baseline * (1.0 + 1e-7); }

}  // namespace

DesignValue kappa_transition(const RadarSystem& sys, const Scene& scene) {
  require_clutter_and_noise(sys, scene);
  const double L = scene.layout.baseline;
  const double ns = noise_power(sys.noise_temperature, sys.bandwidth);
  const double lam2 = sys.wavelength * sys.wavelength;
  const double base = scene.clutter_density * scene.clutter_rcs * scene.target_rcs * sys.transmit_power *
                      sys.gain_constant * lam2 / (L * (scene.target_rcs + scene.threshold * scene.clutter_rcs) * ns);

  DesignValue v;
  v.closed_form = base / kFourPiCubed;
  v.verbatim = base;
  auto balance = [&](double kappa) {
    return std::log(noise_exponent(sys, scene, kappa)) - std::log(clutter_exponent_beam_cosite(scene, sys, kappa));
  };
  v.numeric = log_bisect(balance, lower_kappa(scene), kKappaUpper,
                         "noise and clutter exponents do not cross for kappa in (L/2, 1e6]");
  return v;
}

DesignValue ptx_max(const RadarSystem& sys, const Scene& scene, double kappa) {
  require_clutter_and_noise(sys, scene);
  if (classify_regime(scene.layout.baseline, kappa) != Regime::CoSite) {
    throw Error(ErrorKind::Domain, "ptx_max requires L < 2 kappa");
  }
  const double L = scene.layout.baseline;
  const double ns = noise_power(sys.noise_temperature, sys.bandwidth);
  const double lam2 = sys.wavelength * sys.wavelength;
  const double base = L * kappa * (scene.target_rcs + scene.threshold * scene.clutter_rcs) * ns /
                      (scene.clutter_density * scene.clutter_rcs * scene.target_rcs * sys.gain_constant * lam2);

  DesignValue v;
  v.closed_form = base * kFourPiCubed;
  v.verbatim = base;
  const double clutter = clutter_exponent_beam_cosite(scene, sys, kappa);
  auto balance = [&](double ptx) {
    RadarSystem s = sys;
    s.transmit_power = ptx;
    return std::log(noise_exponent(s, scene, kappa)) - std::log(clutter);
  };
  v.numeric = log_bisect(balance, 1e-300, 1e300, "no transmit power balances the exponents");
  return v;
}

DesignValue kappa_monostatic(const RadarSystem& sys, const Scene& scene) {
  validate(sys);
  validate(scene);
  if (!(scene.clutter_density > 0.0)) throw Error(ErrorKind::Domain, "requires clutter density > 0");
  if (!(scene.layout.baseline > 0.0)) throw Error(ErrorKind::Domain, "requires a bistatic layout (L > 0)");
  const double L = scene.layout.baseline;
  const double dd = sys.beamwidth_tx * sys.beamwidth_rx;
  const double st = scene.target_rcs, sc = scene.clutter_rcs, g = scene.threshold;

  DesignValue v;
  v.closed_form = std::cbrt(L * (st + g * sc) / (scene.clutter_density * dd * g * sc));
  v.verbatim = std::cbrt(L * (st + g * sc) / (scene.clutter_density * dd * sc));
  auto excess = [&](double kappa) { return std::log(clutter_exponent_beam_cosite(scene, sys, kappa)); };
  v.numeric = log_bisect(excess, lower_kappa(scene), kKappaUpper,
                         "clutter exponent never reaches 1 for kappa in (L/2, 1e6]");
  return v;
}

DesignValue pdc_sigmac_limit(const RadarSystem& sys, const Scene& scene, double kappa) {
  validate(sys);
  validate(scene);
  if (classify_regime(scene.layout.baseline, kappa) != Regime::CoSite || scene.layout.baseline == 0.0) {
    throw Error(ErrorKind::Domain, "sigma_c limit requires the co-site beam cell (0 < L < 2 kappa)");
  }
  const double L = scene.layout.baseline;
  const double e = scene.clutter_density * kappa * kappa * kappa * sys.beamwidth_tx * sys.beamwidth_rx / L;

  DesignValue v;
  v.closed_form = std::exp(-e);
  v.verbatim = std::exp(-e / scene.threshold);
  // Clutter-only P_dc along sigma_c -> infinity until successive values settle.
  Scene s = scene;
  double prev = -1.0, cur = 0.0;
  for (double sc = 1e3 * (scene.target_rcs / scene.threshold); sc < 1e300; sc *= 1e3) {
    s.clutter_rcs = sc;
    cur = std::exp(-clutter_exponent_beam_cosite(s, sys, kappa));
    if (std::abs(cur - prev) <= 1e-15 * std::abs(cur)) break;
    prev = cur;
  }
  v.numeric = cur;
  return v;
}

PdcBreakdown pdc_at_bandwidth(const RadarSystem& sys, const Scene& scene, double kappa, double bw) {
  RadarSystem s = sys;
  s.bandwidth = bw;
  s.pulse_width = 1.0 / bw;
  return pdc(s, scene, kappa, CellKind::Range, RegimeChoice::Auto, {});
}

DesignValue bw_optimal(const RadarSystem& sys, const Scene& scene, double kappa) {
  validate(sys);
  validate(scene);
  if (scene.clutter_density == 0.0) {
    throw Error(ErrorKind::DegenerateOptimum, "rho = 0: P_dc decreases monotonically with bandwidth");
  }
  if (sys.noise_temperature == 0.0) {
    throw Error(ErrorKind::DegenerateOptimum, "T_s = 0: P_dc increases monotonically with bandwidth");
  }
  const double L = scene.layout.baseline;
  const double theta = sys.beamwidth_rx;
  const double h = los_propagation(sys.wavelength, kappa);
  const double s = sin_beta_max(L, kappa);
  const double cos2 = 1.0 - s * s;
  const double st = scene.target_rcs, sc = scene.clutter_rcs, g = scene.threshold;
  const double common = scene.clutter_density * kSpeedOfLight * kappa * sc * st * sys.transmit_power *
                        sys.gain_constant * h;

  DesignValue v;
  v.closed_form = std::sqrt(common / (2.0 * cos2 * (st + g * sc) * kBoltzmann * sys.noise_temperature * theta));
  v.verbatim = std::sqrt(common / (2.0 * (1.0 - L * L / (kappa * kappa)) * (st + g * sc) * theta * kBoltzmann *
                                   sys.noise_temperature));

  auto total = [&](double log_bw) {
    const auto b = pdc_at_bandwidth(sys, scene, kappa, std::exp(log_bw));
    return b.noise_exponent + b.clutter_exponent;
  };
  // Coarse log grid, then Brent (golden section with parabolic steps) on the best bracket.
  constexpr int kGrid = 241;
  const double lo = std::log(1.0), hi = std::log(1e18);
  std::vector<double> xs(kGrid), fs(kGrid);
  int best = 0;
  for (int i = 0; i < kGrid; ++i) {
    xs[i] = lo + (hi - lo) * i / (kGrid - 1);
    fs[i] = total(xs[i]);
    if (fs[i] < fs[best]) best = i;
  }
  if (best == 0 || best == kGrid - 1) {
    throw Error(ErrorKind::DegenerateOptimum, "optimum bandwidth outside [1 Hz, 1e18 Hz]");
  }
  std::uintmax_t iters = 500;
  const auto r = boost::math::tools::brent_find_minima(total, xs[best - 1], xs[best + 1],
                                                       std::numeric_limits<double>::digits / 2, iters);
  v.numeric = std::exp(r.first);
  return v;
}

}  // namespace bistatic
