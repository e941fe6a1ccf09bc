#include <cstdlib>
#include <string_view>

#include "nearlyg2/error.hpp"
#include "nearlyg2/kernels/stencil.hpp"

namespace nearlyg2::kernels {

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(NEARLYG2_AVX2_KERNEL) && (defined(__x86_64__) || defined(__i386__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa best_isa() {
  if (const char* env = std::getenv("NEARLYG2_ISA"); env != nullptr && std::string_view(env) == "scalar")
    return Isa::Scalar;
  return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void apply_operator(const StencilPlan& plan, const double* u, const double* coeff, std::size_t count, double* out,
                    Isa isa) {
  if (isa == Isa::Avx2)
    apply_operator_avx2(plan, u, coeff, count, out);
  else
    apply_operator_scalar(plan, u, coeff, count, out);
}

}  // namespace nearlyg2::kernels
