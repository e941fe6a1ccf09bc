#include "nearlyg2/kernels/stencil.hpp"

#include "nearlyg2/error.hpp"

#if defined(NEARLYG2_AVX2_KERNEL)
#include <immintrin.h>
#endif

namespace nearlyg2::kernels {

#if defined(NEARLYG2_AVX2_KERNEL)

namespace {

inline __m256d at(const double* p, std::ptrdiff_t off) { return _mm256_loadu_pd(p + off); }

inline __m256d second2(const double* p, std::ptrdiff_t s) {
  const __m256d c = at(p, 0);
  return _mm256_sub_pd(_mm256_add_pd(at(p, s), at(p, -s)), _mm256_add_pd(c, c));
}

inline __m256d first2(const double* p, std::ptrdiff_t s) { return _mm256_sub_pd(at(p, s), at(p, -s)); }

inline __m256d mixed2(const double* p, std::ptrdiff_t a, std::ptrdiff_t b) {
  return _mm256_sub_pd(_mm256_sub_pd(at(p, a + b), at(p, a - b)), _mm256_sub_pd(at(p, b - a), at(p, -a - b)));
}

inline __m256d second4(const double* p, std::ptrdiff_t s) {
  const __m256d sixteen = _mm256_set1_pd(16.0), thirty = _mm256_set1_pd(30.0);
  const __m256d inner = _mm256_sub_pd(_mm256_mul_pd(sixteen, _mm256_add_pd(at(p, s), at(p, -s))),
                                      _mm256_add_pd(at(p, 2 * s), at(p, -2 * s)));
  return _mm256_sub_pd(inner, _mm256_mul_pd(thirty, at(p, 0)));
}

inline __m256d first4(const double* p, std::ptrdiff_t s) {
  const __m256d eight = _mm256_set1_pd(8.0);
  return _mm256_sub_pd(_mm256_mul_pd(eight, _mm256_sub_pd(at(p, s), at(p, -s))),
                       _mm256_sub_pd(at(p, 2 * s), at(p, -2 * s)));
}

inline __m256d mixed4(const double* p, std::ptrdiff_t a, std::ptrdiff_t b) {
  const __m256d eight = _mm256_set1_pd(8.0);
  const __m256d r1 = first4(p + a, b), rm1 = first4(p - a, b);
  const __m256d r2 = first4(p + 2 * a, b), rm2 = first4(p - 2 * a, b);
  return _mm256_sub_pd(_mm256_mul_pd(eight, _mm256_sub_pd(r1, rm1)), _mm256_sub_pd(r2, rm2));
}

}  // namespace

void apply_operator_avx2(const StencilPlan& plan, const double* u, const double* coeff, std::size_t count,
                         double* out) {
  if (!isa_available(Isa::Avx2)) throw Error(ErrorKind::InvalidArgument, "AVX2 kernel not available on this machine");
  const detail::Scales sc = detail::make_scales(plan);
  const bool o4 = plan.order == 4;
  const std::size_t vec_end = count - count % 4;
  for (std::size_t t = 0; t < vec_end; t += 4) {
    const double* p = u + t;
    __m256d acc = _mm256_setzero_pd();
    int ch = 0;
    for (int i = 0; i < kAxes; ++i, ++ch) {
      const std::ptrdiff_t s = plan.stride[static_cast<std::size_t>(i)];
      const __m256d d = _mm256_mul_pd(o4 ? second4(p, s) : second2(p, s),
                                      _mm256_set1_pd(sc.second[static_cast<std::size_t>(i)]));
      acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(coeff + static_cast<std::size_t>(ch) * count + t), d));
    }
    for (int m = 0; m < kMixed; ++m, ++ch) {
      const auto [i, j] = detail::kMixedPairs[static_cast<std::size_t>(m)];
      const std::ptrdiff_t a = plan.stride[static_cast<std::size_t>(i)], b = plan.stride[static_cast<std::size_t>(j)];
      const __m256d d = _mm256_mul_pd(o4 ? mixed4(p, a, b) : mixed2(p, a, b),
                                      _mm256_set1_pd(sc.mixed[static_cast<std::size_t>(m)]));
      acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(coeff + static_cast<std::size_t>(ch) * count + t), d));
    }
    for (int k = 0; k < kAxes; ++k, ++ch) {
      const std::ptrdiff_t s = plan.stride[static_cast<std::size_t>(k)];
      const __m256d d = _mm256_mul_pd(o4 ? first4(p, s) : first2(p, s),
                                      _mm256_set1_pd(sc.first[static_cast<std::size_t>(k)]));
      acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(coeff + static_cast<std::size_t>(ch) * count + t), d));
    }
    _mm256_storeu_pd(out + t, acc);
  }
  detail::apply_scalar_range(plan, sc, u, coeff, count, vec_end, count, out);
}

#else

void apply_operator_avx2(const StencilPlan&, const double*, const double*, std::size_t, double*) {
  throw Error(ErrorKind::InvalidArgument, "this build has no AVX2 kernel");
}

#endif

}  // namespace nearlyg2::kernels
