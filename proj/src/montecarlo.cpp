#include "bistatic/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

#include "bistatic/constants.hpp"
#include "bistatic/error.hpp"

namespace bistatic {

std::string_view to_string(SimMode mode) { return mode == SimMode::Oracle ? "oracle" : "geometric"; }

std::string_view to_string(RangeBinRule rule) { return rule == RangeBinRule::FullWidth ? "full" : "half"; }

WilsonInterval wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  WilsonInterval w{std::max(0.0, center - half), std::min(1.0, center + half)};
  if (successes == 0) w.low = 0.0;
  if (successes == trials) w.high = 1.0;
  w.low = std::min(w.low, p);
  w.high = std::max(w.high, p);
  return w;
}

double binomial_z_score(double p_hat, double p, std::size_t trials) {
  const double var = p * (1.0 - p) / static_cast<double>(trials);
  const double diff = p_hat - p;
  if (var > 0.0) return diff / std::sqrt(var);
  if (diff == 0.0) return 0.0;
  return diff > 0.0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
}

namespace {

double range_tolerance(double pulse_width, RangeBinRule rule) {
  const double full = kSpeedOfLight * pulse_width;
  return rule == RangeBinRule::FullWidth ? full : 0.5 * full;
}

}  // namespace

bool in_beam_cell(const BistaticLayout& layout, const GeometrySolution& target, Point clutter, double beamwidth_tx,
                  double beamwidth_rx) {
  const CellQuery q = make_cell_query(CellKind::Beamwidth, layout, target, beamwidth_tx, beamwidth_rx, 0.0, 1.0);
  return cell_contains(q, clutter.x, clutter.y);
}

bool in_range_cell(const BistaticLayout& layout, const GeometrySolution& target, Point clutter, double beamwidth_rx,
                   double pulse_width, RangeBinRule rule) {
  const CellQuery q = make_cell_query(CellKind::Range, layout, target, beamwidth_rx, beamwidth_rx,
                                      range_tolerance(pulse_width, rule), 1.0);
  return cell_contains(q, clutter.x, clutter.y);
}

double sample_polar_angle(Regime regime, RandomStream& stream, std::size_t& resamples) {
  for (;;) {
    const double theta = 2.0 * kPi * stream.uniform();
    if (regime != Regime::Lemniscate || std::cos(2.0 * theta) >= 0.0) return theta;
    ++resamples;
  }
}

namespace {

TrialOutcome finish(double signal, double clutter, double noise, double threshold, TrialOutcome out) {
  const double denom = clutter + noise;
  out.scnr = denom > 0.0 ? signal / denom : std::numeric_limits<double>::infinity();
  out.detected = out.scnr >= threshold;
  return out;
}

TrialOutcome oracle_trial(const RadarSystem& sys, const Scene& scene, double kappa, Regime regime,
                          const SimConfig& config, RandomStream& stream) {
  TrialOutcome out;
  out.polar_angle = out.bistatic_angle = out.rmin_over_kappa = std::numeric_limits<double>::quiet_NaN();
  const double sigma_t = sample_target_rcs(SwerlingOneTarget{scene.target_rcs}, stream);
  double clutter_area = 0.0;
  if (scene.clutter_density > 0.0) {
    clutter_area = closed_form_cell_area(sys, scene, kappa, config.cell, regime, config.analytic);
  }
  const std::uint64_t n = sample_poisson(scene.clutter_density * clutter_area, stream);
  const WeibullClutterRcs clutter_model{scene.clutter_rcs, 1.0};
  double sigma_sum = 0.0;
  for (std::uint64_t i = 0; i < n; ++i) sigma_sum += sample_clutter_rcs(clutter_model, stream);
  out.clutter_in_cell = static_cast<std::size_t>(n);

  const double gain = sys.transmit_power * sys.gain_constant / (sys.beamwidth_tx * sys.beamwidth_rx);
  const double h = los_propagation(sys.wavelength, kappa);
  return finish(gain * sigma_t * h, gain * sigma_sum * h, noise_power(sys.noise_temperature, sys.bandwidth),
                scene.threshold, out);
}

TrialOutcome geometric_trial(const RadarSystem& sys, const Scene& scene, double kappa, Regime regime,
                             const SimConfig& config, RandomStream& stream, TrialWorkspace& ws) {
  TrialOutcome out;
  const double L = scene.layout.baseline;
  out.polar_angle = sample_polar_angle(regime, stream, out.target_resamples);
  const GeometrySolution g = solve_geometry(L, kappa, out.polar_angle);
  out.bistatic_angle = g.bistatic_angle;
  out.rmin_over_kappa = g.min_range() / kappa;

  const double sigma_t = sample_target_rcs(SwerlingOneTarget{scene.target_rcs}, stream);
  const double gain = sys.transmit_power * sys.gain_constant / (sys.beamwidth_tx * sys.beamwidth_rx);
  const double signal = gain * sigma_t * los_propagation(sys.wavelength, g.tx_range, g.rx_range);

  sample_clutter_points(ClutterField{scene.clutter_density, config.region}, stream, ws.points);
  const std::size_t n = ws.points.size();
  ws.sigmas.resize(n);
  ws.returns.resize(n);
  const WeibullClutterRcs clutter_model{scene.clutter_rcs, 1.0};
  for (std::size_t i = 0; i < n; ++i) ws.sigmas[i] = sample_clutter_rcs(clutter_model, stream);

  const double scale = gain * sys.wavelength * sys.wavelength / kFourPiCubed;
  const CellQuery q = make_cell_query(config.cell, scene.layout, g, sys.beamwidth_tx, sys.beamwidth_rx,
                                      range_tolerance(sys.effective_pulse_width(), config.range_bin), scale);
  out.clutter_in_cell = cell_returns(q, ws.points.x, ws.points.y, ws.sigmas, ws.returns);
  // Sequential sum keeps the result independent of the kernel's lane width.
  double clutter = 0.0;
  for (double r : ws.returns) clutter += r;

  return finish(signal, clutter, noise_power(sys.noise_temperature, sys.bandwidth), scene.threshold, out);
}

}  // namespace

TrialOutcome run_trial(const RadarSystem& sys, const Scene& scene, double kappa, const SimConfig& config,
                       RandomStream& stream, TrialWorkspace& ws) {
  const Regime regime = resolve_regime(scene, kappa, config.regime);
  if (config.mode == SimMode::Oracle) return oracle_trial(sys, scene, kappa, regime, config, stream);
  return geometric_trial(sys, scene, kappa, regime, config, stream, ws);
}

TrialOutcome run_trial(const RadarSystem& sys, const Scene& scene, double kappa, const SimConfig& config,
                       RandomStream& stream) {
  TrialWorkspace ws;
  return run_trial(sys, scene, kappa, config, stream, ws);
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("BISTATIC_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

std::vector<std::string> arena_warnings(const Scene& scene, double kappa, const Rect& region) {
  std::vector<std::string> w;
  const Point tx = scene.layout.transmitter(), rx = scene.layout.receiver();
  if (!region.contains(tx.x, tx.y) || !region.contains(rx.x, rx.y)) {
    w.emplace_back("radar sites lie outside the clutter region");
  }
  const double half_l = 0.5 * scene.layout.baseline;
  const double r_max = std::sqrt(kappa * kappa + half_l * half_l);
  if (r_max > region.x_max || -r_max < region.x_min || r_max > region.y_max || -r_max < region.y_min) {
    std::ostringstream os;
    os << "targets at kappa=" << kappa << " reach radius " << r_max
       << " m, beyond the clutter region; resolution cells are truncated";
    w.push_back(os.str());
  }
  return w;
}

PdcEstimate estimate_pdc(const RadarSystem& sys, const Scene& scene, double kappa, const SimConfig& config,
                         const RandomStream& base, std::vector<TrialOutcome>* outcomes) {
  validate(sys);
  validate(scene);
  if (config.trials < 100) throw Error(ErrorKind::Domain, "estimate_pdc requires at least 100 trials");
  if (config.mode == SimMode::Geometric) {
    validate(ClutterField{scene.clutter_density, config.region});
  }

  PdcEstimate est;
  est.trials = config.trials;
  est.analytic_pdc = pdc(sys, scene, kappa, config.cell, config.regime, config.analytic).pdc;
  if (config.mode == SimMode::Geometric) est.warnings = arena_warnings(scene, kappa, config.region);

  if (outcomes) outcomes->assign(config.trials, TrialOutcome{});
  const unsigned threads =
      std::max(1u, std::min<unsigned>(config.threads ? config.threads : default_thread_count(),
                                      static_cast<unsigned>(std::min<std::size_t>(config.trials, 1024))));
  const std::size_t chunk = (config.trials + threads - 1) / threads;

  std::vector<std::size_t> detections(threads, 0), resamples(threads, 0);
  std::vector<std::exception_ptr> errors(threads);
  auto work = [&](unsigned t) {
    try {
      TrialWorkspace ws;
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(config.trials, begin + chunk);
      for (std::size_t i = begin; i < end; ++i) {
        RandomStream stream = base.substream(i);
        const TrialOutcome o = run_trial(sys, scene, kappa, config, stream, ws);
        detections[t] += o.detected ? 1 : 0;
        resamples[t] += o.target_resamples;
        if (outcomes) (*outcomes)[i] = o;
      }
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };

  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  est.detections = std::accumulate(detections.begin(), detections.end(), std::size_t{0});
  est.target_resamples = std::accumulate(resamples.begin(), resamples.end(), std::size_t{0});
  est.p_hat = static_cast<double>(est.detections) / static_cast<double>(est.trials);
  const WilsonInterval ci = wilson_interval(est.detections, est.trials);
  est.ci_low = ci.low;
  est.ci_high = ci.high;
  est.z_score = binomial_z_score(est.p_hat, est.analytic_pdc, est.trials);
  return est;
}

PdcEstimate estimate_pdc(const RadarSystem& sys, const Scene& scene, double kappa, const SimConfig& config,
                         std::vector<TrialOutcome>* outcomes) {
  return estimate_pdc(sys, scene, kappa, config, RandomStream(config.seed), outcomes);
}

Histogram make_histogram(double lo, double hi, std::size_t bins) {
  if (bins == 0) throw Error(ErrorKind::Domain, "histogram needs at least one bin");
  Histogram h;
  h.lo = lo;
  h.hi = hi > lo ? hi : lo + 1.0;
  h.counts.assign(bins, 0);
  h.min_sample = std::numeric_limits<double>::infinity();
  h.max_sample = -std::numeric_limits<double>::infinity();
  return h;
}

std::size_t Histogram::bin_of(double v) const {
  const double t = (v - lo) / (hi - lo) * static_cast<double>(counts.size());
  if (!(t > 0.0)) return 0;
  return std::min(static_cast<std::size_t>(t), counts.size() - 1);
}

double Histogram::bin_lo(std::size_t i) const { return lo + (hi - lo) * static_cast<double>(i) / counts.size(); }

double Histogram::bin_hi(std::size_t i) const {
  return i + 1 == counts.size() ? hi : lo + (hi - lo) * static_cast<double>(i + 1) / counts.size();
}

std::size_t Histogram::mode_bin() const {
  return static_cast<std::size_t>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

std::size_t Histogram::count_in(double a, double b) const {
  return static_cast<std::size_t>(std::count_if(samples.begin(), samples.end(), [&](double v) { return v >= a && v <= b; }));
}

void Histogram::add(double v) {
  ++counts[bin_of(v)];
  ++total;
  min_sample = std::min(min_sample, v);
  max_sample = std::max(max_sample, v);
  samples.push_back(v);
}

namespace {

void require_cosite(double baseline, double kappa) {
  if (classify_regime(baseline, kappa) != Regime::CoSite) {
    throw Error(ErrorKind::Domain, "histogram studies require the co-site regime (L < 2 kappa)");
  }
}

}  // namespace

Histogram histogram_sin_beta(double baseline, double kappa, std::size_t trials, std::size_t bins,
                             std::uint64_t seed) {
  require_cosite(baseline, kappa);
  Histogram h = make_histogram(0.0, sin_beta_max(baseline, kappa), bins);
  RandomStream stream(seed);
  for (std::size_t i = 0; i < trials; ++i) {
    const double theta = 2.0 * kPi * stream.uniform();
    h.add(solve_geometry(baseline, kappa, theta).sin_beta);
  }
  return h;
}

Histogram histogram_rmin(double baseline, double kappa, std::size_t trials, std::size_t bins, std::uint64_t seed) {
  require_cosite(baseline, kappa);
  Histogram h = make_histogram(1.0 - 0.5 * baseline / kappa, 1.0, bins);
  RandomStream stream(seed);
  for (std::size_t i = 0; i < trials; ++i) {
    const double theta = 2.0 * kPi * stream.uniform();
    h.add(solve_geometry(baseline, kappa, theta).min_range() / kappa);
  }
  return h;
}

}  // namespace bistatic
