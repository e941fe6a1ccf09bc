#include "nearlyg2/kernels/stencil.hpp"

#include "nearlyg2/error.hpp"

namespace nearlyg2::kernels {

namespace detail {

Scales make_scales(const StencilPlan& plan) {
  if (plan.order != 2 && plan.order != 4) throw Error(ErrorKind::InvalidArgument, "stencil order must be 2 or 4");
  for (double h : plan.spacing)
    if (!(h > 0.0)) throw Error(ErrorKind::InvalidArgument, "grid spacing must be positive");
  const bool o4 = plan.order == 4;
  Scales s;
  for (int i = 0; i < kAxes; ++i) {
    const double h = plan.spacing[static_cast<std::size_t>(i)];
    s.second[static_cast<std::size_t>(i)] = 1.0 / ((o4 ? 12.0 : 1.0) * h * h);
    s.first[static_cast<std::size_t>(i)] = 1.0 / ((o4 ? 12.0 : 2.0) * h);
  }
  for (int m = 0; m < kMixed; ++m) {
    const auto [i, j] = kMixedPairs[static_cast<std::size_t>(m)];
    s.mixed[static_cast<std::size_t>(m)] =
        1.0 / ((o4 ? 144.0 : 4.0) * plan.spacing[static_cast<std::size_t>(i)] * plan.spacing[static_cast<std::size_t>(j)]);
  }
  return s;
}

}  // namespace detail

namespace {

// The expression shapes below are mirrored exactly in the AVX2 variant.

inline double second2(const double* u, std::ptrdiff_t s) { return (u[s] + u[-s]) - (u[0] + u[0]); }

inline double first2(const double* u, std::ptrdiff_t s) { return u[s] - u[-s]; }

inline double mixed2(const double* u, std::ptrdiff_t a, std::ptrdiff_t b) {
  return (u[a + b] - u[a - b]) - (u[b - a] - u[-a - b]);
}

inline double second4(const double* u, std::ptrdiff_t s) {
  return (16.0 * (u[s] + u[-s]) - (u[2 * s] + u[-2 * s])) - 30.0 * u[0];
}

inline double first4(const double* u, std::ptrdiff_t s) { return 8.0 * (u[s] - u[-s]) - (u[2 * s] - u[-2 * s]); }

inline double mixed4(const double* u, std::ptrdiff_t a, std::ptrdiff_t b) {
  // row(k) = first4 along b at offset k*a
  const double r1 = first4(u + a, b), rm1 = first4(u - a, b);
  const double r2 = first4(u + 2 * a, b), rm2 = first4(u - 2 * a, b);
  return 8.0 * (r1 - rm1) - (r2 - rm2);
}

}  // namespace

namespace detail {

void apply_scalar_range(const StencilPlan& plan, const Scales& sc, const double* u, const double* coeff,
                        std::size_t count, std::size_t begin, std::size_t end, double* out) {
  const bool o4 = plan.order == 4;
  for (std::size_t t = begin; t < end; ++t) {
    const double* p = u + t;
    double acc = 0.0;
    int ch = 0;
    for (int i = 0; i < kAxes; ++i, ++ch) {
      const std::ptrdiff_t s = plan.stride[static_cast<std::size_t>(i)];
      const double d = (o4 ? second4(p, s) : second2(p, s)) * sc.second[static_cast<std::size_t>(i)];
      acc = acc + coeff[static_cast<std::size_t>(ch) * count + t] * d;
    }
    for (int m = 0; m < kMixed; ++m, ++ch) {
      const auto [i, j] = kMixedPairs[static_cast<std::size_t>(m)];
      const std::ptrdiff_t a = plan.stride[static_cast<std::size_t>(i)], b = plan.stride[static_cast<std::size_t>(j)];
      const double d = (o4 ? mixed4(p, a, b) : mixed2(p, a, b)) * sc.mixed[static_cast<std::size_t>(m)];
      acc = acc + coeff[static_cast<std::size_t>(ch) * count + t] * d;
    }
    for (int k = 0; k < kAxes; ++k, ++ch) {
      const std::ptrdiff_t s = plan.stride[static_cast<std::size_t>(k)];
      const double d = (o4 ? first4(p, s) : first2(p, s)) * sc.first[static_cast<std::size_t>(k)];
      acc = acc + coeff[static_cast<std::size_t>(ch) * count + t] * d;
    }
    out[t] = acc;
  }
}

}  // namespace detail

void apply_operator_scalar(const StencilPlan& plan, const double* u, const double* coeff, std::size_t count,
                           double* out) {
  detail::apply_scalar_range(plan, detail::make_scales(plan), u, coeff, count, 0, count, out);
}

}  // namespace nearlyg2::kernels
