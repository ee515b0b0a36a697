#include <gtest/gtest.h>

#include <cmath>

#include "bistatic/config.hpp"
#include "bistatic/constants.hpp"
#include "bistatic/error.hpp"

using namespace bistatic;
using nlohmann::json;

TEST(Config, DefaultValues) {
  const RunConfig c;
  EXPECT_EQ(c.scene.layout.baseline, 5.0);
  EXPECT_EQ(c.system.transmit_power, 10.0);
  EXPECT_EQ(c.scene.clutter_rcs, 1.0);
  EXPECT_EQ(c.scene.target_rcs, 1.0);
  EXPECT_NEAR(c.system.beamwidth_tx, 5.0 * kPi / 180.0, 1e-15);
  EXPECT_EQ(c.system.wavelength, 0.005);
  EXPECT_EQ(c.system.noise_temperature, 300.0);
  EXPECT_EQ(c.system.bandwidth, 2e9);
  EXPECT_EQ(c.scene.clutter_density, 0.001);
  EXPECT_EQ(c.scene.threshold, 1.0);
  EXPECT_EQ(c.system.gain_constant, 1.0);
}

TEST(Config, UnknownKeysAreRejected) {
  try {
    parse_config(json{{"kapa", 3.0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Config);
  }
  EXPECT_THROW(parse_config(json{{"config", {{"L", 1.0}}}, {"extra", 1}}), Error);
  EXPECT_THROW(parse_config(json::array()), Error);
}

TEST(Config, AnglesAcceptDegreesAndRadians) {
  EXPECT_NEAR(parse_config(json{{"beamwidth", "5deg"}}).system.beamwidth_rx, degrees(5.0), 1e-15);
  EXPECT_EQ(parse_config(json{{"theta", "0.5rad"}}).theta, 0.5);
  EXPECT_EQ(parse_config(json{{"theta", 0.25}}).theta, 0.25);
  EXPECT_NEAR(parse_angle("90deg"), kPi / 2, 1e-15);
  EXPECT_THROW(parse_angle("ninety"), Error);
}

TEST(Config, ThresholdAcceptsDecibels) {
  EXPECT_EQ(parse_threshold("0dB"), 1.0);
  EXPECT_NEAR(parse_threshold("10dB"), 10.0, 1e-12);
  EXPECT_NEAR(parse_threshold("-3dB"), std::pow(10.0, -0.3), 1e-15);
  EXPECT_EQ(parse_config(json{{"gamma", "0dB"}}).scene.threshold, parse_config(json{{"gamma", 1}}).scene.threshold);
}

TEST(Config, EnumsAndVerbatim) {
  const auto c = parse_config(json{{"mode", "oracle"},
                                   {"cell", "range"},
                                   {"regime", "cosite"},
                                   {"range_bin", "full"},
                                   {"verbatim", true},
                                   {"kappa_m", 60.0}});
  EXPECT_EQ(c.sim.mode, SimMode::Oracle);
  EXPECT_EQ(c.sim.cell, CellKind::Range);
  EXPECT_EQ(c.sim.regime, RegimeChoice::CoSite);
  EXPECT_EQ(c.sim.range_bin, RangeBinRule::FullWidth);
  EXPECT_EQ(c.sim.analytic.gamma, GammaPolicy::Verbatim);
  EXPECT_EQ(c.sim.analytic.range_area, RangeArea::Verbatim);
  EXPECT_EQ(*c.sim.analytic.kappa_m, 60.0);
  EXPECT_THROW(parse_config(json{{"mode", "fast"}}), Error);
  EXPECT_THROW(parse_config(json{{"trials", -5}}), Error);
  EXPECT_THROW(parse_config(json{{"region", {1, 2, 3}}}), Error);
}

TEST(Config, JsonRoundTrip) {
  RunConfig c;
  c.kappa = 33.3;
  c.theta = 0.123;
  c.system.transmit_power = 41.0;
  c.system.pulse_width = 1e-9;
  c.scene.threshold = 2.5;
  c.sim.seed = 987654321987654321ull;
  c.sim.mode = SimMode::Oracle;
  c.sim.region = {-50, 60, -70, 80};
  const json j = to_json(c);
  const RunConfig back = parse_config(j);
  EXPECT_EQ(to_json(back), j);
  EXPECT_EQ(back.sim.seed, c.sim.seed);
  // The CLI's {"config": ..., "result": ...} document is accepted as input.
  EXPECT_EQ(to_json(parse_config(json{{"config", j}, {"result", {{"pdc", 0.5}}}})), j);
}

TEST(Config, FlagTokens) {
  EXPECT_EQ(scalar_from_text("12"), json(12u));
  EXPECT_EQ(scalar_from_text("1e-3"), json(1e-3));
  EXPECT_EQ(scalar_from_text("-2.5"), json(-2.5));
  EXPECT_EQ(scalar_from_text("true"), json(true));
  EXPECT_EQ(scalar_from_text("5deg"), json("5deg"));
}
