#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string_view>

#include "bistatic/geometry.hpp"

namespace bistatic {

/// Target-dependent constants for testing clutter points against a
/// resolution cell whose antennas both point at the target.
///
/// A point lies inside an antenna lobe when the angle at the antenna between
/// the target direction u and the point direction v is at most half the
/// beamwidth, tested without trig as dot(u,v) > 0 and
/// dot(u,v)^2 >= cos^2(half) * (|u|^2 |v|^2).
struct CellQuery {
  CellKind kind = CellKind::Beamwidth;
  Point tx;
  Point rx;
  Point target;
  double cos2_half_tx = 1.0;
  double cos2_half_rx = 1.0;
  double target_range_sum = 0.0;  // R_tx + R_rx of the target
  double range_tolerance = 0.0;   // admitted |R_txc + R_rxc - target_range_sum|
  double power_scale = 1.0;       // multiplies sigma / (R_txc^2 R_rxc^2)

  // Derived; filled by finalize().
  double utx_x = 0.0, utx_y = 0.0, utx2 = 0.0;
  double urx_x = 0.0, urx_y = 0.0, urx2 = 0.0;

  void finalize() {
    utx_x = target.x - tx.x;
    utx_y = target.y - tx.y;
    utx2 = utx_x * utx_x + utx_y * utx_y;
    urx_x = target.x - rx.x;
    urx_y = target.y - rx.y;
    urx2 = urx_x * urx_x + urx_y * urx_y;
  }
};

CellQuery make_cell_query(CellKind kind, const BistaticLayout& layout, const GeometrySolution& target,
                          double beamwidth_tx, double beamwidth_rx, double range_tolerance, double power_scale);

namespace detail {

inline bool lobe_contains(double ux, double uy, double u2, double cos2_half, double vx, double vy, double v2) {
  const double dot = ux * vx + uy * vy;
  return dot > 0.0 && dot * dot >= cos2_half * (u2 * v2);
}

}  // namespace detail

/// Reference membership test for a single point; the SIMD kernels must agree
/// with it bit for bit.
inline bool cell_contains(const CellQuery& q, double x, double y, double* d2tx_out = nullptr,
                          double* d2rx_out = nullptr) {
  const double tx_dx = x - q.tx.x, tx_dy = y - q.tx.y;
  const double rx_dx = x - q.rx.x, rx_dy = y - q.rx.y;
  const double d2tx = tx_dx * tx_dx + tx_dy * tx_dy;
  const double d2rx = rx_dx * rx_dx + rx_dy * rx_dy;
  if (d2tx_out) *d2tx_out = d2tx;
  if (d2rx_out) *d2rx_out = d2rx;
  const bool in_rx = detail::lobe_contains(q.urx_x, q.urx_y, q.urx2, q.cos2_half_rx, rx_dx, rx_dy, d2rx);
  if (q.kind == CellKind::Beamwidth) {
    return in_rx && detail::lobe_contains(q.utx_x, q.utx_y, q.utx2, q.cos2_half_tx, tx_dx, tx_dy, d2tx);
  }
  const double diff = (std::sqrt(d2tx) + std::sqrt(d2rx)) - q.target_range_sum;
  return in_rx && std::abs(diff) <= q.range_tolerance;
}

/// Per-point clutter return: out[i] = power_scale * sigma[i] / (R_txc^2 R_rxc^2)
/// for points inside the cell and exactly 0 otherwise. Returns the in-cell count.
using CellReturnsFn = std::size_t (*)(const CellQuery&, std::span<const double> xs, std::span<const double> ys,
                                      std::span<const double> sigmas, std::span<double> out);

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);

namespace scalar {
std::size_t cell_returns(const CellQuery& q, std::span<const double> xs, std::span<const double> ys,
                         std::span<const double> sigmas, std::span<double> out);
}

#if defined(BISTATIC_HAVE_AVX2)
namespace avx2 {
std::size_t cell_returns(const CellQuery& q, std::span<const double> xs, std::span<const double> ys,
                         std::span<const double> sigmas, std::span<double> out);
}
#endif

bool isa_supported(Isa isa);

/// Best supported ISA, unless BISTATIC_ISA=scalar|avx2 selects one.
Isa active_isa();

CellReturnsFn cell_returns_for(Isa isa);

/// Dispatches to the active ISA.
std::size_t cell_returns(const CellQuery& q, std::span<const double> xs, std::span<const double> ys,
                         std::span<const double> sigmas, std::span<double> out);

}  // namespace bistatic
