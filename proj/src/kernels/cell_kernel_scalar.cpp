#include <cmath>

#include "bistatic/cell_kernel.hpp"
#include "bistatic/error.hpp"

namespace bistatic {

CellQuery make_cell_query(CellKind kind, const BistaticLayout& layout, const GeometrySolution& target,
                          double beamwidth_tx, double beamwidth_rx, double range_tolerance, double power_scale) {
  CellQuery q;
  q.kind = kind;
  q.tx = layout.transmitter();
  q.rx = layout.receiver();
  q.target = target.target;
  const double ctx = std::cos(0.5 * beamwidth_tx);
  const double crx = std::cos(0.5 * beamwidth_rx);
  q.cos2_half_tx = ctx * ctx;
  q.cos2_half_rx = crx * crx;
  q.target_range_sum = target.tx_range + target.rx_range;
  q.range_tolerance = range_tolerance;
  q.power_scale = power_scale;
  q.finalize();
  return q;
}

namespace scalar {

std::size_t cell_returns(const CellQuery& q, std::span<const double> xs, std::span<const double> ys,
                         std::span<const double> sigmas, std::span<double> out) {
  const std::size_t n = xs.size();
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double d2tx, d2rx;
    if (cell_contains(q, xs[i], ys[i], &d2tx, &d2rx)) {
      out[i] = (q.power_scale * sigmas[i]) / (d2tx * d2rx);
      ++count;
    } else {
      out[i] = 0.0;
    }
  }
  return count;
}

}  // namespace scalar
}  // namespace bistatic
