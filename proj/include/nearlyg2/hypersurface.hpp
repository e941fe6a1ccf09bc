#pragma once

// Extrinsic geometry of an oriented hypersurface M^6 in the round S^7 and
// the almost complex structure xi(X) = B(N, X) it inherits.

#include <array>
#include <cstdint>

#include <Eigen/Core>

#include "nearlyg2/charts.hpp"
#include "nearlyg2/sphere.hpp"

namespace nearlyg2::hyper {

using Mat6 = Eigen::Matrix<double, 6, 6>;
using Vec6 = Eigen::Matrix<double, 6, 1>;

enum class NormalSide { Chart, Reversed };

struct ShapeData {
  ShapeData(const s7::SpherePoint& point, const Coords& coords) : p(point), u(coords) {}

  s7::SpherePoint p;
  Coords u;
  Jacobian jacobian = Jacobian::Zero();
  /// frame[a] = jacobian * to_frame.col(a) (upper triangular, from Gram-Schmidt).
  Mat6 to_frame = Mat6::Zero();
  std::array<Vec8, 6> frame{};
  Vec8 normal = Vec8::Zero();
  Mat6 A = Mat6::Zero();
  double H = 0.0;
  double A2 = 0.0;

  /// Frame components of an ambient vector (its projection to T_pM).
  Vec6 components(const Vec8& x) const;
  Vec8 from_components(const Vec6& c) const;
  Vec8 project_tangent(const Vec8& x) const;
  /// A applied to a tangent vector, as an ambient vector.
  Vec8 apply_A(const Vec8& x) const;
  /// Chart direction c with jacobian * c = x for x tangent to M.
  Coords chart_direction(const Vec8& x) const;
  /// Throws unless x is tangent to M (|<x,N>|, |<x,p>| <= tol * max(1, |x|)).
  void require_tangent(const Vec8& x, double tol = 1e-8) const;
};

/// Shape data at chart point u. The normal is oriented so that
/// (p, d_1 F, ..., d_6 F, N) is positive in R^8; Reversed flips N (and A).
ShapeData shape_at(const HypersurfaceChart& chart, const Coords& u, NormalSide side = NormalSide::Chart);

Vec8 xi_at(const ShapeData& shape, const Vec8& x);

/// The structure's cross product and G(X, Y, Z) = (nabla_X B)(Y, Z) = tau0/4 psi(X, Y, Z, .)^sharp.
Vec8 B_at(const Vec8& p, const Vec8& x, const Vec8& y);
Vec8 G_at(const s7::SpherePoint& p, const Vec8& x, const Vec8& y, const Vec8& z);

/// (nabla_X B)(Y, Z) by central differences along great circles, with Y and Z
/// extended by tangential projection of their constant ambient values.
Vec8 G_fd(const s7::SpherePoint& p, const Vec8& x, const Vec8& y, const Vec8& z, double step = 1e-4);

/// Closed form of (nabla_X xi)(Y) = G(X,N,Y) - phi(N,Y,AX) N - B(AX,Y).
Vec8 nabla_xi(const ShapeData& shape, const Vec8& x, const Vec8& y);
/// The same derivative by finite differences of the xi-field along the chart.
Vec8 nabla_xi_fd(const HypersurfaceChart& chart, const Coords& u, const Vec8& x, const Vec8& y, double step = 1e-4,
                 NormalSide side = NormalSide::Chart);

/// Deterministic sample of unit tangent vectors of M at the shape point.
std::vector<Vec8> sample_unit_tangents(const ShapeData& shape, int count, std::uint64_t seed);

/// max |(nabla_X xi) X| over `samples` seeded unit directions.
double nk_defect(const ShapeData& shape, int samples, std::uint64_t seed);
double umbilic_defect(const ShapeData& shape);
/// |B(AX, X)^T|
double cross_defect(const ShapeData& shape, const Vec8& x);
double sup_cross_defect(const ShapeData& shape, int samples, std::uint64_t seed);

/// Norm of the covector v -> sum_a g((nabla_{e_a} xi)(v), e_a), i.e. its
/// maximum over unit v; closed form and finite-difference variants.
double div_xi(const ShapeData& shape);
double div_xi_fd(const HypersurfaceChart& chart, const Coords& u, double step = 1e-4);

struct HyperCurvature {
  Mat6 ricci = Mat6::Zero();
  double scalar = 0.0;
};

/// Ric = 5g - A^2, S = 30 - |A|^2. Throws RequiresMinimal unless |tr A| <= 1e-8.
HyperCurvature hyper_curvature(const ShapeData& shape);

/// |nabla_i(A d_j) - nabla_j(A d_i)| for coordinate fields d_i, d_j.
double codazzi_residual(const HypersurfaceChart& chart, const Coords& u, int i, int j, double step = 1e-4);

/// Intrinsic Riemann tensor R^l_{ijk} of the induced metric (finite differences
/// of the coordinate metric), with Rm(d_i, d_j) d_k = R^l_{ijk} d_l.
using Riemann = std::array<double, 6 * 6 * 6 * 6>;
Riemann intrinsic_riemann(const HypersurfaceChart& chart, const Coords& u, double step = 1e-3);
inline double& riemann_at(Riemann& r, int l, int i, int j, int k) { return r[static_cast<std::size_t>(((l * 6 + i) * 6 + j) * 6 + k)]; }
inline double riemann_at(const Riemann& r, int l, int i, int j, int k) { return r[static_cast<std::size_t>(((l * 6 + i) * 6 + j) * 6 + k)]; }

/// |Rm(d_i, d_j) d_k - [g(d_j,d_k) d_i - g(d_i,d_k) d_j + g(A d_j,d_k) A d_i - g(A d_i,d_k) A d_j]|
double gauss_residual(const HypersurfaceChart& chart, const Coords& u, int i, int j, int k, double step = 1e-3);

/// Sectional curvature of the coordinate plane (d_i, d_j) from the intrinsic Riemann tensor.
double sectional_curvature(const HypersurfaceChart& chart, const Coords& u, int i, int j, double step = 1e-3);

/// Residual vectors of the G-B identities for tangent vectors at p:
///   G(B(W,Z),X,Y) against its six-term expansion, and
///   B(G(X,Y,Z),W) + G(B(X,Y),Z,W).
Vec8 g_of_b_residual(const s7::SpherePoint& p, const Vec8& x, const Vec8& y, const Vec8& z, const Vec8& w);
Vec8 b_of_g_residual(const s7::SpherePoint& p, const Vec8& x, const Vec8& y, const Vec8& z, const Vec8& w);

}  // namespace nearlyg2::hyper
