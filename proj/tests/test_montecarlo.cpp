#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "bistatic/analytic.hpp"
#include "bistatic/constants.hpp"
#include "bistatic/error.hpp"
#include "bistatic/geometry.hpp"
#include "bistatic/montecarlo.hpp"

using namespace bistatic;

namespace {

SimConfig oracle_config(std::size_t trials, std::uint64_t seed) {
  SimConfig c;
  c.trials = trials;
  c.seed = seed;
  c.mode = SimMode::Oracle;
  return c;
}

double wilson_se(const PdcEstimate& e) { return (e.ci_high - e.ci_low) / (2.0 * 1.959963984540054); }

bool same_outcomes(const std::vector<TrialOutcome>& a, const std::vector<TrialOutcome>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& x = a[i];
    const auto& y = b[i];
    if (std::memcmp(&x.scnr, &y.scnr, sizeof(double)) || x.detected != y.detected ||
        std::memcmp(&x.polar_angle, &y.polar_angle, sizeof(double)) || x.clutter_in_cell != y.clutter_in_cell) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST(Wilson, KnownValues) {
  const auto half = wilson_interval(50, 100);
  EXPECT_NEAR(half.low, 0.40383, 1e-5);
  EXPECT_NEAR(half.high, 0.59617, 1e-5);
  EXPECT_EQ(wilson_interval(0, 100).low, 0.0);
  EXPECT_EQ(wilson_interval(100, 100).high, 1.0);
  const auto none = wilson_interval(0, 100);
  EXPECT_NEAR(none.high, 3.8415 / (100 + 3.8415), 1e-4);
}

TEST(Wilson, BinomialZ) {
  EXPECT_NEAR(binomial_z_score(0.55, 0.5, 100), 1.0, 1e-12);
  EXPECT_EQ(binomial_z_score(1.0, 1.0, 100), 0.0);
}

TEST(RunTrial, NoNoiseNoClutterAlwaysDetects) {
  RadarSystem sys;
  sys.noise_temperature = 0.0;
  Scene scene;
  scene.clutter_density = 0.0;
  for (SimMode mode : {SimMode::Geometric, SimMode::Oracle}) {
    SimConfig cfg;
    cfg.mode = mode;
    RandomStream s(1);
    for (int i = 0; i < 200; ++i) {
      const auto o = run_trial(sys, scene, 40.0, cfg, s);
      ASSERT_TRUE(o.detected);
      ASSERT_TRUE(std::isinf(o.scnr));
    }
  }
}

TEST(RunTrial, HugeThresholdNeverDetects) {
  Scene scene;
  scene.threshold = 1e300;
  SimConfig cfg;
  RandomStream s(2);
  for (int i = 0; i < 200; ++i) EXPECT_FALSE(run_trial(RadarSystem{}, scene, 20.0, cfg, s).detected);
}

TEST(RunTrial, DetectedIffScnrAboveThreshold) {
  SimConfig cfg;
  RandomStream s(3);
  for (int i = 0; i < 2000; ++i) {
    const auto o = run_trial(RadarSystem{}, Scene{}, 50.0, cfg, s);
    ASSERT_EQ(o.detected, o.scnr >= 1.0);
    ASSERT_GE(o.rmin_over_kappa, 0.95 - 1e-9);
    ASSERT_LE(o.rmin_over_kappa, 1.0 + 1e-12);
  }
}

TEST(EstimatePdc, RejectsTooFewTrials) {
  SimConfig cfg;
  cfg.trials = 99;
  EXPECT_THROW(estimate_pdc(RadarSystem{}, Scene{}, 10.0, cfg), Error);
}

TEST(EstimatePdc, DegenerateAllDetected) {
  RadarSystem sys;
  sys.noise_temperature = 0.0;
  Scene scene;
  scene.clutter_density = 0.0;
  SimConfig cfg;
  cfg.trials = 500;
  const auto e = estimate_pdc(sys, scene, 30.0, cfg);
  EXPECT_EQ(e.p_hat, 1.0);
  EXPECT_EQ(e.ci_high, 1.0);
  EXPECT_EQ(e.analytic_pdc, 1.0);
}

TEST(EstimatePdc, OracleAgreesAtTenMetresWithMillionTrials) {
  const auto e = estimate_pdc(RadarSystem{}, Scene{}, 10.0, oracle_config(1'000'000, 11));
  EXPECT_NEAR(e.analytic_pdc, 0.99424, 1e-5);
  EXPECT_LE(std::abs(e.p_hat - e.analytic_pdc), 3.0 * wilson_se(e));
  EXPECT_LE(e.ci_low, e.p_hat);
  EXPECT_GE(e.ci_high, e.p_hat);
}

TEST(EstimatePdc, OracleAgreesOverParameterGrid) {
  int combos = 0, misses = 0;
  std::uint64_t seed = 100;
  for (double kappa : {10.0, 30.0, 60.0}) {
    for (double rho : {0.0005, 0.001, 0.004}) {
      for (double sigma_c : {0.1, 1.0, 10.0}) {
        for (double gamma : {0.5, 1.0, 2.0}) {
          Scene scene;
          scene.clutter_density = rho;
          scene.clutter_rcs = sigma_c;
          scene.threshold = gamma;
          RadarSystem sys;
          sys.transmit_power = 1000.0;
          const auto e = estimate_pdc(sys, scene, kappa, oracle_config(100'000, ++seed));
          ++combos;
          if (std::abs(e.p_hat - e.analytic_pdc) > 3.0 * wilson_se(e)) ++misses;
        }
      }
    }
  }
  EXPECT_EQ(combos, 81);
  EXPECT_EQ(misses, 0);
}

TEST(EstimatePdc, OracleRangeCellAndLemniscate) {
  SimConfig cfg = oracle_config(100'000, 21);
  cfg.cell = CellKind::Range;
  Scene scene;
  scene.clutter_density = 0.3;
  const auto r = estimate_pdc(RadarSystem{}, scene, 30.0, cfg);
  EXPECT_LE(std::abs(r.p_hat - r.analytic_pdc), 3.0 * wilson_se(r));
  EXPECT_LT(r.analytic_pdc, 0.99);

  SimConfig lem = oracle_config(100'000, 22);
  Scene dense;
  dense.clutter_density = 5.0;
  const auto l = estimate_pdc(RadarSystem{}, dense, 2.5, lem);
  EXPECT_LE(std::abs(l.p_hat - l.analytic_pdc), 3.0 * wilson_se(l));
}

TEST(EstimatePdc, WilsonCoverage) {
  int covered = 0;
  double analytic = 0.0;
  const RandomStream root(31);
  Scene scene;
  scene.clutter_density = 0.01;
  for (int i = 0; i < 500; ++i) {
    const auto e = estimate_pdc(RadarSystem{}, scene, 25.0, oracle_config(2000, 0), root.substream(i));
    analytic = e.analytic_pdc;
    covered += e.ci_low <= analytic && analytic <= e.ci_high;
  }
  EXPECT_GT(analytic, 0.2);
  EXPECT_LT(analytic, 0.8);
  EXPECT_GE(covered, 465);
}

TEST(EstimatePdc, IdenticalAcrossThreadCounts) {
  for (SimMode mode : {SimMode::Geometric, SimMode::Oracle}) {
    SimConfig cfg;
    cfg.mode = mode;
    cfg.trials = 20000;
    cfg.seed = 77;
    std::vector<TrialOutcome> one, many;
    cfg.threads = 1;
    const auto a = estimate_pdc(RadarSystem{}, Scene{}, 35.0, cfg, &one);
    cfg.threads = 7;
    const auto b = estimate_pdc(RadarSystem{}, Scene{}, 35.0, cfg, &many);
    EXPECT_EQ(a.detections, b.detections);
    EXPECT_EQ(a.p_hat, b.p_hat);
    EXPECT_TRUE(same_outcomes(one, many));
  }
}

TEST(EstimatePdc, TrialsDependOnlyOnTheirIndex) {
  SimConfig cfg;
  cfg.trials = 300;
  cfg.seed = 5;
  std::vector<TrialOutcome> all;
  estimate_pdc(RadarSystem{}, Scene{}, 40.0, cfg, &all);
  RandomStream s = RandomStream(5).substream(123);
  const auto o = run_trial(RadarSystem{}, Scene{}, 40.0, cfg, s);
  EXPECT_EQ(o.scnr, all[123].scnr);
  EXPECT_EQ(o.polar_angle, all[123].polar_angle);
}

TEST(EstimatePdc, GeometricBiasWithinModelTolerance) {
  SimConfig cfg;
  cfg.trials = 50000;
  cfg.seed = 41;
  const auto e = estimate_pdc(RadarSystem{}, Scene{}, 50.0, cfg);
  EXPECT_LE(std::abs(e.p_hat - e.analytic_pdc), 0.05);
}

TEST(EstimatePdc, GeometricNoiseOnlyMatchesClosedForm) {
  // Without clutter the geometric and closed forms share every assumption.
  Scene scene;
  scene.clutter_density = 0.0;
  SimConfig cfg;
  cfg.trials = 100000;
  cfg.seed = 43;
  const auto e = estimate_pdc(RadarSystem{}, scene, 45.0, cfg);
  EXPECT_LE(std::abs(e.z_score), 4.0);
}

TEST(EstimatePdc, LemniscateResamplesDeadZone) {
  SimConfig cfg;
  cfg.trials = 2000;
  Scene scene;
  scene.clutter_density = 0.0;
  const auto e = estimate_pdc(RadarSystem{}, scene, 2.5, cfg);
  EXPECT_GT(e.target_resamples, 0u);
  EXPECT_EQ(e.trials, 2000u);
}

TEST(SamplePolarAngle, LemniscateSupport) {
  RandomStream s(8);
  std::size_t resamples = 0;
  for (int i = 0; i < 10000; ++i) {
    const double t = sample_polar_angle(Regime::Lemniscate, s, resamples);
    ASSERT_GE(std::cos(2 * t), 0.0);
  }
  // Half of the circle is dead zone.
  EXPECT_NEAR(resamples / 10000.0, 1.0, 0.05);
}

TEST(ArenaWarnings, FlagCellsLeavingTheRegion) {
  EXPECT_TRUE(arena_warnings(Scene{}, 30.0, Rect{}).empty());
  EXPECT_FALSE(arena_warnings(Scene{}, 150.0, Rect{}).empty());
}

TEST(Histograms, SinBetaModeHoldsMaximum) {
  const auto h = histogram_sin_beta(5.0, 50.0, 10000, 50, 1);
  const std::size_t mode = h.mode_bin();
  EXPECT_LE(h.bin_lo(mode), 0.0998749);
  EXPECT_GE(h.bin_hi(mode), 0.0998749);
  EXPECT_EQ(h.total, 10000u);
  EXPECT_LE(h.max_sample, 0.0998749217771909 + 1e-9);
}

TEST(Histograms, SinBetaUpperMassMatchesQuadrature) {
  const double smax = sin_beta_max(5.0, 50.0);
  // Fraction of theta with sin(beta) >= 0.9 smax from a dense deterministic grid.
  const int n = 1'000'000;
  int above = 0;
  for (int i = 0; i < n; ++i) above += solve_geometry(5.0, 50.0, (i + 0.5) * 2 * kPi / n).sin_beta >= 0.9 * smax;
  const double expected = above / double(n);
  const auto h = histogram_sin_beta(5.0, 50.0, 10000, 50, 3);
  const double got = h.count_in(0.9 * smax, smax) / double(h.total);
  // sin(beta) ~ (L/kappa)|sin(theta)|, so roughly 1 - (2/pi) asin(0.9)
  EXPECT_NEAR(expected, 1.0 - 2.0 / kPi * std::asin(0.9), 0.01);
  EXPECT_NEAR(got, expected, 4.0 * std::sqrt(expected * (1 - expected) / 10000));
}

TEST(Histograms, MonostaticSinBetaIsZero) {
  const auto h = histogram_sin_beta(0.0, 50.0, 1000, 10, 1);
  EXPECT_EQ(h.min_sample, 0.0);
  EXPECT_EQ(h.max_sample, 0.0);
  EXPECT_EQ(h.counts[h.mode_bin()], 1000u);
}

TEST(Histograms, MinimumRangeRatioBounds) {
  const auto h = histogram_rmin(5.0, 50.0, 2000, 50, 1);
  EXPECT_GE(h.min_sample, 0.95 - 1e-6);
  EXPECT_LE(h.max_sample, 1.0);
  const auto mono = histogram_rmin(0.0, 50.0, 2000, 50, 1);
  EXPECT_EQ(mono.min_sample, 1.0);
  EXPECT_EQ(mono.max_sample, 1.0);
}

TEST(Histograms, RequireCoSite) { EXPECT_THROW(histogram_sin_beta(5.0, 2.5), Error); }
