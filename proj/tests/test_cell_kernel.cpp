#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "bistatic/cell_kernel.hpp"
#include "bistatic/constants.hpp"
#include "bistatic/geometry.hpp"
#include "bistatic/montecarlo.hpp"
#include "support.hpp"

using namespace bistatic;
using testing_support::Gen;

namespace {

struct Batch {
  std::vector<double> xs, ys, sigmas;
};

// Points scattered both near the target (so some land in the cell) and
// over a wide area.
Batch random_batch(Gen& gen, const GeometrySolution& g, std::size_t n) {
  Batch b;
  for (std::size_t i = 0; i < n; ++i) {
    if (gen.uniform(0.0, 1.0) < 0.5) {
      const double spread = 0.1 * g.radial_distance;
      b.xs.push_back(g.target.x + gen.uniform(-spread, spread));
      b.ys.push_back(g.target.y + gen.uniform(-spread, spread));
    } else {
      b.xs.push_back(gen.uniform(-300.0, 300.0));
      b.ys.push_back(gen.uniform(-300.0, 300.0));
    }
    b.sigmas.push_back(gen.log_uniform(0.01, 10.0));
  }
  return b;
}

double angle_between(double ux, double uy, double vx, double vy) {
  return std::atan2(std::abs(ux * vy - uy * vx), ux * vx + uy * vy);
}

}  // namespace

TEST(CellKernel, DispatchReportsAnAvailableIsa) {
  EXPECT_TRUE(isa_supported(Isa::Scalar));
  EXPECT_TRUE(isa_supported(active_isa()));
  EXPECT_NE(cell_returns_for(Isa::Scalar), nullptr);
}

TEST(CellKernel, Avx2MatchesScalarBitForBit) {
#if defined(BISTATIC_HAVE_AVX2)
  if (!isa_supported(Isa::Avx2)) GTEST_SKIP() << "CPU lacks AVX2";
  Gen gen(201);
  std::size_t in_cell_total = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const double kappa = gen.log_uniform(5.0, 200.0);
    const double L = gen.uniform(0.0, 1.9) * kappa;
    const auto g = solve_geometry(L, kappa, gen.uniform(0.0, 2 * kPi));
    const CellKind kind = trial % 2 ? CellKind::Range : CellKind::Beamwidth;
    const double bw_tx = degrees(gen.uniform(1.0, 20.0)), bw_rx = degrees(gen.uniform(1.0, 20.0));
    const auto q = make_cell_query(kind, BistaticLayout{L}, g, bw_tx, bw_rx, gen.uniform(0.05, 5.0),
                                   gen.log_uniform(1e-20, 1e-5));
    const auto b = random_batch(gen, g, static_cast<std::size_t>(gen.integer(0, 67)));
    std::vector<double> a(b.xs.size(), -1.0), v(b.xs.size(), -2.0);
    const auto na = scalar::cell_returns(q, b.xs, b.ys, b.sigmas, a);
    const auto nv = avx2::cell_returns(q, b.xs, b.ys, b.sigmas, v);
    ASSERT_EQ(na, nv);
    ASSERT_EQ(0, std::memcmp(a.data(), v.data(), a.size() * sizeof(double))) << "trial " << trial;
    in_cell_total += na;
  }
  EXPECT_GT(in_cell_total, 1000u);
#else
  GTEST_SKIP() << "built without the AVX2 kernel";
#endif
}

TEST(CellKernel, ScalarMatchesReferenceMembership) {
  Gen gen(203);
  for (int trial = 0; trial < 500; ++trial) {
    const double kappa = gen.log_uniform(5.0, 200.0);
    const double L = gen.uniform(0.0, 1.9) * kappa;
    const auto g = solve_geometry(L, kappa, gen.uniform(0.0, 2 * kPi));
    const auto q = make_cell_query(CellKind::Beamwidth, BistaticLayout{L}, g, degrees(5), degrees(5), 1.0, 1.0);
    const auto b = random_batch(gen, g, 50);
    std::vector<double> out(b.xs.size());
    scalar::cell_returns(q, b.xs, b.ys, b.sigmas, out);
    for (std::size_t i = 0; i < b.xs.size(); ++i) {
      double d2tx = 0, d2rx = 0;
      const bool in = cell_contains(q, b.xs[i], b.ys[i], &d2tx, &d2rx);
      ASSERT_EQ(in, out[i] != 0.0);
      if (in) {
        ASSERT_EQ(out[i], b.sigmas[i] / (d2tx * d2rx));
      }
    }
  }
}

TEST(CellKernel, BeamMembershipAgreesWithAngleOracle) {
  Gen gen(205);
  int checked = 0, inside = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const double kappa = gen.log_uniform(5.0, 200.0);
    const double L = gen.uniform(0.1, 1.9) * kappa;
    const auto g = solve_geometry(L, kappa, gen.uniform(0.0, 2 * kPi));
    const double bw_tx = degrees(gen.uniform(1.0, 20.0)), bw_rx = degrees(gen.uniform(1.0, 20.0));
    const BistaticLayout layout{L};
    const auto tx = layout.transmitter(), rx = layout.receiver();
    const auto b = random_batch(gen, g, 100);
    for (std::size_t i = 0; i < b.xs.size(); ++i) {
      const double a_tx = angle_between(g.target.x - tx.x, g.target.y - tx.y, b.xs[i] - tx.x, b.ys[i] - tx.y);
      const double a_rx = angle_between(g.target.x - rx.x, g.target.y - rx.y, b.xs[i] - rx.x, b.ys[i] - rx.y);
      // Skip points straddling an edge to within rounding.
      if (std::abs(a_tx - bw_tx / 2) < 1e-9 || std::abs(a_rx - bw_rx / 2) < 1e-9) continue;
      const bool oracle = a_tx <= bw_tx / 2 && a_rx <= bw_rx / 2;
      ASSERT_EQ(in_beam_cell(layout, g, {b.xs[i], b.ys[i]}, bw_tx, bw_rx), oracle);
      ++checked;
      inside += oracle;
    }
  }
  EXPECT_GT(checked, 29000);
  EXPECT_GT(inside, 1000);
}

TEST(CellKernel, MembershipExamples) {
  const BistaticLayout layout{5.0};
  const auto g = solve_geometry(5.0, 50.0, 0.6);
  EXPECT_TRUE(in_beam_cell(layout, g, g.target, degrees(5), degrees(5)));
  EXPECT_FALSE(in_beam_cell(layout, g, {-30.0, -0.1}, degrees(5), degrees(5)));
  EXPECT_TRUE(in_range_cell(layout, g, g.target, degrees(5), 0.5e-9));

  // Step outward along the bisector by more than c dtau / 2 in range sum.
  const auto tx = layout.transmitter(), rx = layout.receiver();
  const double ux = (g.target.x - tx.x) / g.tx_range + (g.target.x - rx.x) / g.rx_range;
  const double uy = (g.target.y - tx.y) / g.tx_range + (g.target.y - rx.y) / g.rx_range;
  const double n = std::hypot(ux, uy);
  const double step = 0.2;  // range sum grows by about 2 step cos(beta/2) = 0.4 m > 0.075 m
  EXPECT_FALSE(in_range_cell(layout, g, {g.target.x + step * ux / n, g.target.y + step * uy / n}, degrees(5), 0.5e-9));
  EXPECT_TRUE(
      in_range_cell(layout, g, {g.target.x + 0.01 * ux / n, g.target.y + 0.01 * uy / n}, degrees(5), 0.5e-9));
}

// Monte Carlo area of the accepted region, sampled in a box around the target.
double accepted_area(const CellQuery& q, const Point& c, double half, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> u(-half, half);
  const std::size_t chunk = 4096;
  std::vector<double> xs(chunk), ys(chunk), sig(chunk, 1.0), out(chunk);
  const std::size_t blocks = n / chunk;
  std::size_t hits = 0;
  for (std::size_t b = 0; b < blocks; ++b) {
    for (std::size_t i = 0; i < chunk; ++i) {
      xs[i] = c.x + u(eng);
      ys[i] = c.y + u(eng);
    }
    hits += cell_returns(q, xs, ys, sig, out);
  }
  return (4.0 * half * half) * static_cast<double>(hits) / static_cast<double>(blocks * chunk);
}

TEST(CellKernel, BeamCellAreaMatchesClosedForm) {
  const double dth = degrees(1.0);
  const struct {
    double L, kappa, theta;
  } cases[] = {{40.0, 50.0, 1.2}, {60.0, 50.0, 2.0}, {90.0, 50.0, 1.6}, {30.0, 40.0, 1.4}, {70.0, 60.0, 0.9}};
  for (const auto& c : cases) {
    const auto g = solve_geometry(c.L, c.kappa, c.theta);
    ASSERT_GT(g.bistatic_angle, degrees(20.0));
    const auto q = make_cell_query(CellKind::Beamwidth, BistaticLayout{c.L}, g, dth, dth, 0.0, 1.0);
    const double half = 1.2 * (g.tx_range + g.rx_range) * dth / (2.0 * g.sin_beta);
    const double mc = accepted_area(q, g.target, half, 2'000'000, 7);
    const double closed = cell_area_beamwidth(c.kappa, dth, dth, g.bistatic_angle);
    EXPECT_NEAR(mc / closed, 1.0, 0.02) << "L=" << c.L << " kappa=" << c.kappa << " beta=" << g.bistatic_angle;
  }
}

TEST(CellKernel, RangeCellAreaMatchesClosedForm) {
  const double dth = degrees(5.0), dtau = 0.5e-9;
  const struct {
    double L, kappa, theta;
  } cases[] = {{5.0, 50.0, 0.3}, {5.0, 50.0, 1.2}, {5.0, 100.0, 0.8}, {10.0, 100.0, 0.1}, {5.0, 150.0, 2.5}};
  for (const auto& c : cases) {
    const auto g = solve_geometry(c.L, c.kappa, c.theta);
    const auto q = make_cell_query(CellKind::Range, BistaticLayout{c.L}, g, dth, dth, kSpeedOfLight * dtau / 2, 1.0);
    const double half = 0.6 * g.rx_range * dth + 0.5;
    const double mc = accepted_area(q, g.target, half, 4'000'000, 9);
    const double closed = cell_area_range(dtau, g.min_range(), dth, g.bistatic_angle);
    // The sampled strip is as wide as the receive beam at R_rx; the closed
    // form uses R_min. Cases keep R_rx within 5% of R_min.
    ASSERT_LT(g.rx_range / g.min_range(), 1.04);
    EXPECT_NEAR(mc / closed, 1.0, 0.05) << "L=" << c.L << " kappa=" << c.kappa << " theta=" << c.theta;
  }
}
