#include <cstdlib>
#include <string>

#include "bistatic/cell_kernel.hpp"
#include "bistatic/error.hpp"

namespace bistatic {

std::string_view to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(BISTATIC_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

CellReturnsFn cell_returns_for(Isa isa) {
#if defined(BISTATIC_HAVE_AVX2)
  if (isa == Isa::Avx2) {
    if (!isa_supported(Isa::Avx2)) throw Error(ErrorKind::Config, "AVX2 not supported by this CPU");
    return &avx2::cell_returns;
  }
#else
  if (isa == Isa::Avx2) throw Error(ErrorKind::Config, "built without AVX2 kernels");
#endif
  return &scalar::cell_returns;
}

namespace {

Isa detect() {
  if (const char* env = std::getenv("BISTATIC_ISA")) {
    const std::string v(env);
    if (v == "scalar") return Isa::Scalar;
    if (v == "avx2" && isa_supported(Isa::Avx2)) return Isa::Avx2;
  }
  return isa_supported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

}  // namespace

Isa active_isa() {
  static const Isa isa = detect();
  return isa;
}

std::size_t cell_returns(const CellQuery& q, std::span<const double> xs, std::span<const double> ys,
                         std::span<const double> sigmas, std::span<double> out) {
  static const CellReturnsFn fn = cell_returns_for(active_isa());
  return fn(q, xs, ys, sigmas, out);
}

}  // namespace bistatic
