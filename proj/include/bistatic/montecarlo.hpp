#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "bistatic/analytic.hpp"
#include "bistatic/cell_kernel.hpp"
#include "bistatic/random.hpp"
#include "bistatic/stochastic.hpp"

namespace bistatic {

enum class SimMode {
  Geometric,  // full spatial simulation: Cassini geometry, PPP over the arena, per-scatterer ranges
  Oracle,     // Poisson(rho * A_c) scatterers sharing the target's propagation factor
};

/// Isorange bin rule for range-limited cells: admit |range_sum - target_sum| <= c dtau / 2
/// (HalfWidth) or <= c dtau (FullWidth).
enum class RangeBinRule { HalfWidth, FullWidth };

std::string_view to_string(SimMode mode);
std::string_view to_string(RangeBinRule rule);

struct SimConfig {
  std::size_t trials = 10000;
  Rect region{};  // [-100, 100] m x [-100, 100] m
  std::uint64_t seed = 1;
  SimMode mode = SimMode::Geometric;
  CellKind cell = CellKind::Beamwidth;
  RegimeChoice regime = RegimeChoice::Auto;
  RangeBinRule range_bin = RangeBinRule::HalfWidth;
  unsigned threads = 0;  // 0: BISTATIC_THREADS or 1
  AnalyticOptions analytic{};
};

struct TrialOutcome {
  double polar_angle = 0.0;      // NaN in oracle mode
  double scnr = 0.0;
  bool detected = false;
  double bistatic_angle = 0.0;   // NaN in oracle mode
  double rmin_over_kappa = 0.0;  // NaN in oracle mode
  std::size_t clutter_in_cell = 0;
  std::size_t target_resamples = 0;  // lemniscate dead-zone redraws
};

/// Binomial estimate of P_dc with a 95% Wilson interval and the matching closed form.
struct PdcEstimate {
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t trials = 0;
  std::size_t detections = 0;
  double analytic_pdc = 0.0;
  double z_score = 0.0;  // (p_hat - analytic) / sqrt(analytic (1 - analytic) / trials)
  std::size_t target_resamples = 0;
  std::vector<std::string> warnings;
};

struct WilsonInterval {
  double low = 0.0;
  double high = 1.0;
};

WilsonInterval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

double binomial_z_score(double p_hat, double p, std::size_t trials);

/// Per-thread scratch buffers reused across trials.
struct TrialWorkspace {
  ClutterPoints points;
  std::vector<double> sigmas;
  std::vector<double> returns;
};

/// Scalar reference membership tests. Antennas point at the target.
bool in_beam_cell(const BistaticLayout& layout, const GeometrySolution& target, Point clutter, double beamwidth_tx,
                  double beamwidth_rx);
bool in_range_cell(const BistaticLayout& layout, const GeometrySolution& target, Point clutter,
                   double beamwidth_rx, double pulse_width, RangeBinRule rule = RangeBinRule::HalfWidth);

/// Uniform polar angle on the regime's valid support; in the lemniscate regime
/// angles with cos(2 theta) < 0 are redrawn and counted in `resamples`.
double sample_polar_angle(Regime regime, RandomStream& stream, std::size_t& resamples);

TrialOutcome run_trial(const RadarSystem& sys, const Scene& scene, double kappa, const SimConfig& config,
                       RandomStream& stream, TrialWorkspace& ws);

TrialOutcome run_trial(const RadarSystem& sys, const Scene& scene, double kappa, const SimConfig& config,
                       RandomStream& stream);

/// Trial i draws from base.substream(i); counts are reduced in trial order, so
/// the estimate does not depend on the thread count. When `outcomes` is
/// non-null it receives every trial outcome in trial order.
PdcEstimate estimate_pdc(const RadarSystem& sys, const Scene& scene, double kappa, const SimConfig& config,
                         const RandomStream& base, std::vector<TrialOutcome>* outcomes = nullptr);

PdcEstimate estimate_pdc(const RadarSystem& sys, const Scene& scene, double kappa, const SimConfig& config,
                         std::vector<TrialOutcome>* outcomes = nullptr);

/// Arena sanity checks: both radar sites inside and the target's cell neighbourhood inside.
std::vector<std::string> arena_warnings(const Scene& scene, double kappa, const Rect& region);

struct Histogram {
  double lo = 0.0;
  double hi = 1.0;  // last bin is closed on the right
  std::vector<std::size_t> counts;
  std::size_t total = 0;
  double min_sample = 0.0;
  double max_sample = 0.0;

  std::size_t bin_of(double v) const;
  double bin_lo(std::size_t i) const;
  double bin_hi(std::size_t i) const;
  std::size_t mode_bin() const;
  std::size_t count_in(double a, double b) const;  // samples in [a, b], recorded in add()

  void add(double v);
  std::vector<double> samples;
};

Histogram make_histogram(double lo, double hi, std::size_t bins);

/// sin(beta) for uniform theta_t. Default range [0, sin_beta_max].
Histogram histogram_sin_beta(double baseline, double kappa, std::size_t trials = 10000, std::size_t bins = 50,
                             std::uint64_t seed = 1);

/// min(R_tx, R_rx) / kappa for uniform theta_t. Default range [1 - L/(2 kappa), 1].
Histogram histogram_rmin(double baseline, double kappa, std::size_t trials = 2000, std::size_t bins = 50,
                         std::uint64_t seed = 1);

unsigned default_thread_count();

}  // namespace bistatic
