#pragma once

// Variable-coefficient second-order operator on a 6-dimensional lattice:
//
//   out[t] = sum_i c_ii D_ii u + sum_{i<j} c_ij D_ij u + sum_k c_k D_k u
//
// with central differences of order 2 or 4. Coefficients come in 27 channels
// (6 pure second, 15 mixed in lexicographic (i, j) order, 6 first), each a
// contiguous array of `count` values. The scalar and AVX2 variants perform
// the same floating-point operations in the same order and agree bit for bit.

#include <array>
#include <cstddef>

namespace nearlyg2::kernels {

inline constexpr int kAxes = 6;
inline constexpr int kMixed = 15;
inline constexpr int kChannels = kAxes + kMixed + kAxes;

enum class Isa { Scalar, Avx2 };

struct StencilPlan {
  int order = 2;                              // 2 or 4
  std::array<std::ptrdiff_t, kAxes> stride{};  // node strides of the lattice
  std::array<double, kAxes> spacing{};
};

/// u points at the first output node; u[t + k * stride] must be readable for
/// every stencil offset k. out and u must not alias.
void apply_operator(const StencilPlan& plan, const double* u, const double* coeff, std::size_t count, double* out,
                    Isa isa);

void apply_operator_scalar(const StencilPlan& plan, const double* u, const double* coeff, std::size_t count,
                           double* out);
/// Throws if the AVX2 variant is unavailable on this machine or build.
void apply_operator_avx2(const StencilPlan& plan, const double* u, const double* coeff, std::size_t count,
                         double* out);

bool isa_available(Isa isa);
/// Best available variant; NEARLYG2_ISA=scalar in the environment forces the scalar kernel.
Isa best_isa();
const char* isa_name(Isa isa);

namespace detail {

// Pairs (i, j), i < j, in channel order.
inline constexpr std::array<std::array<int, 2>, kMixed> kMixedPairs{{
    {0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}, {3, 4}, {3, 5}, {4, 5},
}};

// Precomputed scale factors shared by both variants.
struct Scales {
  std::array<double, kAxes> second{};   // 1/h^2 or 1/(12 h^2)
  std::array<double, kMixed> mixed{};   // 1/(4 h_i h_j) or 1/(144 h_i h_j)
  std::array<double, kAxes> first{};    // 1/(2h) or 1/(12 h)
};

Scales make_scales(const StencilPlan& plan);

/// Scalar evaluation of outputs [begin, end); also serves the vector tail.
void apply_scalar_range(const StencilPlan& plan, const Scales& scales, const double* u, const double* coeff,
                        std::size_t count, std::size_t begin, std::size_t end, double* out);

}  // namespace detail
}  // namespace nearlyg2::kernels
