#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bistatic/random.hpp"

namespace bistatic {

/// Swerling-1 target: exponentially distributed cross-section.
struct SwerlingOneTarget {
  double mean_rcs = 1.0;  // m^2
};

/// Weibull clutter cross-section, parameterized by its mean.
///
/// Scale is mean / Gamma(1 + 1/shape), so the distribution mean equals
/// `mean_rcs` for every shape. shape == 1 is the exponential model.
struct WeibullClutterRcs {
  double mean_rcs = 1.0;  // m^2
  double shape = 1.0;     // in (0, 1]

  double scale() const;
};

struct Rect {
  double x_min = -100.0;
  double x_max = 100.0;
  double y_min = -100.0;
  double y_max = 100.0;

  double area() const { return (x_max - x_min) * (y_max - y_min); }
  bool contains(double x, double y) const {
    return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
  }
};

struct ClutterField {
  double density = 0.0;  // points / m^2
  Rect region;
};

/// Structure-of-arrays clutter positions.
struct ClutterPoints {
  std::vector<double> x;
  std::vector<double> y;

  std::size_t size() const { return x.size(); }
  void clear() {
    x.clear();
    y.clear();
  }
};

void validate(const SwerlingOneTarget& model);
void validate(const WeibullClutterRcs& model);
void validate(const ClutterField& field);

/// Inverse-CDF exponential: -mean * ln(1 - u), u in [0, 1).
double exponential_from_uniform(double mean, double u);

double sample_target_rcs(const SwerlingOneTarget& model, RandomStream& stream);
double sample_clutter_rcs(const WeibullClutterRcs& model, RandomStream& stream);

std::uint64_t sample_poisson(double mean, RandomStream& stream);

/// Poisson count over the region, then i.i.d. uniform positions.
void sample_clutter_points(const ClutterField& field, RandomStream& stream, ClutterPoints& out);
ClutterPoints sample_clutter_points(const ClutterField& field, RandomStream& stream);

double pdf_target_rcs(double rcs, double mean_rcs);
double pdf_clutter_rcs(double rcs, double mean_rcs, double shape);

}  // namespace bistatic
