#include "bistatic/stochastic.hpp"

#include <cmath>
#include <random>

#include "bistatic/error.hpp"

namespace bistatic {

double WeibullClutterRcs::scale() const { return mean_rcs / std::tgamma(1.0 + 1.0 / shape); }

void validate(const SwerlingOneTarget& model) {
  if (!(model.mean_rcs > 0.0)) throw Error(ErrorKind::Domain, "mean target RCS must be > 0");
}

void validate(const WeibullClutterRcs& model) {
  if (!(model.mean_rcs > 0.0)) throw Error(ErrorKind::Domain, "mean clutter RCS must be > 0");
  if (!(model.shape > 0.0 && model.shape <= 1.0)) {
    throw Error(ErrorKind::Domain, "Weibull shape must be in (0, 1]");
  }
}

void validate(const ClutterField& field) {
  if (!(field.density >= 0.0) || !std::isfinite(field.density)) {
    throw Error(ErrorKind::Domain, "clutter density must be finite and >= 0");
  }
  if (!(field.region.x_max > field.region.x_min && field.region.y_max > field.region.y_min)) {
    throw Error(ErrorKind::Domain, "clutter region is degenerate");
  }
}

double exponential_from_uniform(double mean, double u) { return -mean * std::log1p(-u); }

double sample_target_rcs(const SwerlingOneTarget& model, RandomStream& stream) {
  return exponential_from_uniform(model.mean_rcs, stream.uniform());
}

double sample_clutter_rcs(const WeibullClutterRcs& model, RandomStream& stream) {
  const double u = stream.uniform();
  if (model.shape == 1.0) return exponential_from_uniform(model.mean_rcs, u);
  return model.scale() * std::pow(-std::log1p(-u), 1.0 / model.shape);
}

std::uint64_t sample_poisson(double mean, RandomStream& stream) {
  if (mean <= 0.0) return 0;
  std::poisson_distribution<std::uint64_t> dist(mean);
  return dist(stream);
}

void sample_clutter_points(const ClutterField& field, RandomStream& stream, ClutterPoints& out) {
  out.clear();
  const std::uint64_t n = sample_poisson(field.density * field.region.area(), stream);
  out.x.resize(n);
  out.y.resize(n);
  const double w = field.region.x_max - field.region.x_min;
  const double h = field.region.y_max - field.region.y_min;
  for (std::uint64_t i = 0; i < n; ++i) {
    out.x[i] = field.region.x_min + w * stream.uniform();
    out.y[i] = field.region.y_min + h * stream.uniform();
  }
}

ClutterPoints sample_clutter_points(const ClutterField& field, RandomStream& stream) {
  ClutterPoints pts;
  sample_clutter_points(field, stream, pts);
  return pts;
}

double pdf_target_rcs(double rcs, double mean_rcs) {
  if (rcs < 0.0 || !(mean_rcs > 0.0)) throw Error(ErrorKind::Domain, "pdf_target_rcs: negative argument");
  return std::exp(-rcs / mean_rcs) / mean_rcs;
}

double pdf_clutter_rcs(double rcs, double mean_rcs, double shape) {
  if (rcs < 0.0 || !(mean_rcs > 0.0) || !(shape > 0.0)) {
    throw Error(ErrorKind::Domain, "pdf_clutter_rcs: negative argument");
  }
  if (shape == 1.0) return pdf_target_rcs(rcs, mean_rcs);
  const double scale = WeibullClutterRcs{mean_rcs, shape}.scale();
  const double z = rcs / scale;
  return shape / scale * std::pow(z, shape - 1.0) * std::exp(-std::pow(z, shape));
}

}  // namespace bistatic
