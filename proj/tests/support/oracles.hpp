#pragma once

// Reference computations for the tests. Nothing here calls into the library's
// own numerics except chart immersions, which are the inputs.

#include <functional>
#include <vector>

#include <Eigen/Core>
#include <Eigen/LU>

#include "nearlyg2/charts.hpp"

namespace oracle {

using V7 = Eigen::Matrix<double, 7, 1>;
using V8 = Eigen::Matrix<double, 8, 1>;
using M7 = Eigen::Matrix<double, 7, 7>;
using Coords = nearlyg2::hyper::Coords;

/// phi0(u, v, w) as a sum of 3x3 determinants over the printed monomials.
double phi0(const V7& u, const V7& v, const V7& w);
/// (u x v)_k = phi0(u, v, e_k).
V7 cross(const V7& u, const V7& v);

/// Octonion product by Cayley-Dickson doubling of quaternions, with the
/// basis relabelled so that it agrees with phi0 (see the .cpp).
V8 octonion_mul(const V8& a, const V8& b);

/// (rho^* a)(e_I) = a(rho e_I) for a 3-form given as a callable.
double pullback3(const std::function<double(const V7&, const V7&, const V7&)>& a, const M7& rho, int i, int j, int k);

/// Principal curvatures of S^k(sqrt(k/6)) x S^{6-k}(sqrt((6-k)/6)) in S^7,
/// sorted ascending, for the normal that makes the S^k ones negative.
std::vector<double> clifford_principal_curvatures(int k);

/// Laplace-Beltrami in divergence form, (1/sqrt g) d_i(sqrt g g^ij d_j f),
/// with the metric from finite differences of the immersion alone.
double laplacian_divergence_form(const nearlyg2::hyper::HypersurfaceChart& chart, const Coords& u,
                                 const std::function<double(const Coords&)>& f, double step = 1e-3);

}  // namespace oracle
