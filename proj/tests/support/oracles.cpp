#include "oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/LU>

namespace oracle {

namespace {

// printed monomials of phi0, 1-based
constexpr int kTerms[7][4] = {
    {1, 2, 3, +1}, {1, 6, 7, -1}, {5, 2, 7, -1}, {5, 6, 3, -1}, {4, 1, 5, +1}, {4, 2, 6, +1}, {4, 3, 7, +1},
};

}  // namespace

double phi0(const V7& u, const V7& v, const V7& w) {
  double s = 0.0;
  for (const auto& t : kTerms) {
    Eigen::Matrix3d m;
    for (int r = 0; r < 3; ++r) {
      const int i = t[r] - 1;
      m(r, 0) = u[i];
      m(r, 1) = v[i];
      m(r, 2) = w[i];
    }
    s += t[3] * m.determinant();
  }
  return s;
}

V7 cross(const V7& u, const V7& v) {
  V7 r;
  for (int k = 0; k < 7; ++k) r[k] = phi0(u, v, V7::Unit(k));
  return r;
}

V8 octonion_mul(const V8& a, const V8& b) {
  const V7 ai = a.tail<7>(), bi = b.tail<7>();
  V8 r;
  r[0] = a[0] * b[0] - ai.dot(bi);
  r.tail<7>() = a[0] * bi + b[0] * ai + cross(ai, bi);
  return r;
}

double pullback3(const std::function<double(const V7&, const V7&, const V7&)>& a, const M7& rho, int i, int j,
                 int k) {
  return a(rho.col(i), rho.col(j), rho.col(k));
}

std::vector<double> clifford_principal_curvatures(int k) {
  const double a = std::sqrt(k / 6.0), b = std::sqrt((6.0 - k) / 6.0);
  std::vector<double> out;
  for (int i = 0; i < k; ++i) out.push_back(-b / a);
  for (int i = k; i < 6; ++i) out.push_back(a / b);
  std::sort(out.begin(), out.end());
  return out;
}

double laplacian_divergence_form(const nearlyg2::hyper::HypersurfaceChart& chart, const Coords& u,
                                 const std::function<double(const Coords&)>& f, double step) {
  using M6 = Eigen::Matrix<double, 6, 6>;
  using V6 = Eigen::Matrix<double, 6, 1>;
  auto metric = [&](const Coords& x) {
    const double e = 1e-5;
    Eigen::Matrix<double, 8, 6> j;
    for (int i = 0; i < 6; ++i) {
      Coords d = Coords::Zero();
      d[i] = e;
      j.col(i) = (chart.immerse(x + d) - chart.immerse(x - d)) / (2 * e);
    }
    return M6(j.transpose() * j);
  };
  auto flux = [&](const Coords& x) {
    const M6 g = metric(x);
    V6 df;
    for (int i = 0; i < 6; ++i) {
      Coords d = Coords::Zero();
      d[i] = step;
      df[i] = (f(x + d) - f(x - d)) / (2 * step);
    }
    return V6(std::sqrt(g.determinant()) * (g.inverse() * df));
  };
  double div = 0.0;
  for (int i = 0; i < 6; ++i) {
    Coords d = Coords::Zero();
    d[i] = step;
    div += (flux(u + d)[i] - flux(u - d)[i]) / (2 * step);
  }
  return div / std::sqrt(metric(u).determinant());
}

}  // namespace oracle
