// Compiled with -mavx2. Only reached through dispatch after a CPUID check.
#include <immintrin.h>

#include <bit>

#include "bistatic/cell_kernel.hpp"

namespace bistatic::avx2 {

namespace {

inline __m256d lobe_mask(__m256d ux, __m256d uy, __m256d u2, __m256d cos2, __m256d vx, __m256d vy, __m256d v2) {
  const __m256d dot = _mm256_add_pd(_mm256_mul_pd(ux, vx), _mm256_mul_pd(uy, vy));
  const __m256d pos = _mm256_cmp_pd(dot, _mm256_setzero_pd(), _CMP_GT_OQ);
  const __m256d lhs = _mm256_mul_pd(dot, dot);
  const __m256d rhs = _mm256_mul_pd(cos2, _mm256_mul_pd(u2, v2));
  return _mm256_and_pd(pos, _mm256_cmp_pd(lhs, rhs, _CMP_GE_OQ));
}

}  // namespace

std::size_t cell_returns(const CellQuery& q, std::span<const double> xs, std::span<const double> ys,
                         std::span<const double> sigmas, std::span<double> out) {
  const std::size_t n = xs.size();
  const std::size_t body = n & ~std::size_t{3};

  const __m256d txx = _mm256_set1_pd(q.tx.x), txy = _mm256_set1_pd(q.tx.y);
  const __m256d rxx = _mm256_set1_pd(q.rx.x), rxy = _mm256_set1_pd(q.rx.y);
  const __m256d utx_x = _mm256_set1_pd(q.utx_x), utx_y = _mm256_set1_pd(q.utx_y), utx2 = _mm256_set1_pd(q.utx2);
  const __m256d urx_x = _mm256_set1_pd(q.urx_x), urx_y = _mm256_set1_pd(q.urx_y), urx2 = _mm256_set1_pd(q.urx2);
  const __m256d cos2_tx = _mm256_set1_pd(q.cos2_half_tx), cos2_rx = _mm256_set1_pd(q.cos2_half_rx);
  const __m256d range_sum = _mm256_set1_pd(q.target_range_sum);
  const __m256d range_tol = _mm256_set1_pd(q.range_tolerance);
  const __m256d scale = _mm256_set1_pd(q.power_scale);
  const __m256d sign = _mm256_set1_pd(-0.0);
  const bool beam = q.kind == CellKind::Beamwidth;

  std::size_t count = 0;
  for (std::size_t i = 0; i < body; i += 4) {
    const __m256d x = _mm256_loadu_pd(xs.data() + i);
    const __m256d y = _mm256_loadu_pd(ys.data() + i);
    const __m256d tdx = _mm256_sub_pd(x, txx), tdy = _mm256_sub_pd(y, txy);
    const __m256d rdx = _mm256_sub_pd(x, rxx), rdy = _mm256_sub_pd(y, rxy);
    const __m256d d2tx = _mm256_add_pd(_mm256_mul_pd(tdx, tdx), _mm256_mul_pd(tdy, tdy));
    const __m256d d2rx = _mm256_add_pd(_mm256_mul_pd(rdx, rdx), _mm256_mul_pd(rdy, rdy));

    __m256d in = lobe_mask(urx_x, urx_y, urx2, cos2_rx, rdx, rdy, d2rx);
    if (beam) {
      in = _mm256_and_pd(in, lobe_mask(utx_x, utx_y, utx2, cos2_tx, tdx, tdy, d2tx));
    } else {
      const __m256d sum = _mm256_add_pd(_mm256_sqrt_pd(d2tx), _mm256_sqrt_pd(d2rx));
      const __m256d diff = _mm256_andnot_pd(sign, _mm256_sub_pd(sum, range_sum));
      in = _mm256_and_pd(in, _mm256_cmp_pd(diff, range_tol, _CMP_LE_OQ));
    }

    const int bits = _mm256_movemask_pd(in);
    if (bits == 0) {
      _mm256_storeu_pd(out.data() + i, _mm256_setzero_pd());
      continue;
    }
    count += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(bits)));
    const __m256d sig = _mm256_loadu_pd(sigmas.data() + i);
    const __m256d power = _mm256_div_pd(_mm256_mul_pd(scale, sig), _mm256_mul_pd(d2tx, d2rx));
    _mm256_storeu_pd(out.data() + i, _mm256_and_pd(in, power));
  }

  if (body < n) {
    count += scalar::cell_returns(q, xs.subspan(body), ys.subspan(body), sigmas.subspan(body), out.subspan(body));
  }
  return count;
}

}  // namespace bistatic::avx2
