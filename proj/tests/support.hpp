#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "bistatic/analytic.hpp"
#include "bistatic/constants.hpp"

namespace testing_support {

// Parameter generator for property tests. Deliberately separate from the
// library's own RandomStream so a stream bug cannot mask itself.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }

  bistatic::RadarSystem system() {
    bistatic::RadarSystem s;
    s.transmit_power = log_uniform(0.1, 1e3);
    s.gain_constant = log_uniform(0.1, 10.0);
    s.beamwidth_tx = bistatic::degrees(uniform(1.0, 10.0));
    s.beamwidth_rx = bistatic::degrees(uniform(1.0, 10.0));
    s.wavelength = log_uniform(1e-3, 0.1);
    s.noise_temperature = uniform(50.0, 1000.0);
    s.bandwidth = log_uniform(1e7, 1e10);
    return s;
  }

  bistatic::Scene scene() {
    bistatic::Scene sc;
    sc.layout.baseline = uniform(1.0, 20.0);
    sc.clutter_density = log_uniform(1e-4, 1e-2);
    sc.target_rcs = log_uniform(0.1, 10.0);
    sc.clutter_rcs = log_uniform(0.1, 10.0);
    sc.threshold = log_uniform(0.1, 10.0);
    return sc;
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Straight-line arithmetic for the free-space factor, kept apart from the
// library implementation.
inline double propagation_oracle(double lambda, double r_tx, double r_rx) {
  const double four_pi = 4.0 * 3.14159265358979323846;
  return lambda * lambda / (four_pi * four_pi * four_pi * r_tx * r_tx * r_rx * r_rx);
}

}  // namespace testing_support
