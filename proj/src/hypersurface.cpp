#include "nearlyg2/hypersurface.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/LU>

#include "nearlyg2/error.hpp"

namespace nearlyg2::hyper {
namespace {

using Mat86 = Eigen::Matrix<double, 8, 6>;

void require_sphere_tangent(const s7::SpherePoint& p, const Vec8& x) {
  if (std::abs(x.dot(p.vec())) > 1e-10 * std::max(1.0, x.norm()))
    throw Error(ErrorKind::InvalidArgument, "vector is not tangent to S^7 at the base point");
}

Vec8 project_sphere(const Vec8& q, const Vec8& v) { return v - v.dot(q) * q; }

Mat6 coordinate_metric(const HypersurfaceChart& chart, const Coords& u) {
  const Jacobian j = chart.jacobian(u);
  return j.transpose() * j;
}

// gamma[l](i, j) = Gamma^l_ij from finite differences of the coordinate metric.
using Christoffel = std::array<Mat6, 6>;

Christoffel christoffel(const HypersurfaceChart& chart, const Coords& u, double h) {
  std::array<Mat6, 6> dg;  // dg[m](i, j) = d_m g_ij
  for (int m = 0; m < 6; ++m) {
    Coords up = u, dn = u;
    up[m] += h;
    dn[m] -= h;
    dg[static_cast<std::size_t>(m)] = (coordinate_metric(chart, up) - coordinate_metric(chart, dn)) / (2.0 * h);
  }
  const Mat6 ginv = coordinate_metric(chart, u).inverse();
  Christoffel gamma;
  for (int l = 0; l < 6; ++l)
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        double s = 0.0;
        for (int m = 0; m < 6; ++m)
          s += ginv(l, m) * (dg[static_cast<std::size_t>(i)](j, m) + dg[static_cast<std::size_t>(j)](i, m) -
                             dg[static_cast<std::size_t>(m)](i, j));
        gamma[static_cast<std::size_t>(l)](i, j) = 0.5 * s;
      }
  return gamma;
}

void check_index(int i) {
  if (i < 0 || i >= 6) throw Error(ErrorKind::InvalidArgument, "coordinate index out of range");
}

void check_step(double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw Error(ErrorKind::InvalidArgument, "step must be positive");
}

}  // namespace

Vec6 ShapeData::components(const Vec8& x) const {
  Vec6 c;
  for (int a = 0; a < 6; ++a) c[a] = frame[static_cast<std::size_t>(a)].dot(x);
  return c;
}

Vec8 ShapeData::from_components(const Vec6& c) const {
  Vec8 x = Vec8::Zero();
  for (int a = 0; a < 6; ++a) x += c[a] * frame[static_cast<std::size_t>(a)];
  return x;
}

Vec8 ShapeData::project_tangent(const Vec8& x) const { return from_components(components(x)); }

Vec8 ShapeData::apply_A(const Vec8& x) const { return from_components(A * components(x)); }

Coords ShapeData::chart_direction(const Vec8& x) const { return to_frame * components(x); }

void ShapeData::require_tangent(const Vec8& x, double tol) const {
  const double scale = tol * std::max(1.0, x.norm());
  if (std::abs(x.dot(normal)) > scale || std::abs(x.dot(p.vec())) > scale)
    throw Error(ErrorKind::InvalidArgument, "vector is not tangent to the hypersurface");
}

ShapeData shape_at(const HypersurfaceChart& chart, const Coords& u, NormalSide side) {
  if (!chart.domain().contains(u)) throw Error(ErrorKind::OutOfDomain, "chart point outside the regular region");
  const Vec8 x = chart.immerse(u);
  if (!x.allFinite() || std::abs(x.norm() - 1.0) > 1e-10)
    throw Error(ErrorKind::InvalidArgument, "chart does not land on S^7");
  ShapeData s(s7::SpherePoint(x, 1e-10), u);
  s.jacobian = chart.jacobian(u);

  // Gram-Schmidt: jacobian = frame * R, to_frame = R^{-1}
  Mat6 r = Mat6::Zero();
  const double scale = std::max(1.0, s.jacobian.cwiseAbs().maxCoeff());
  for (int a = 0; a < 6; ++a) {
    Vec8 v = project_sphere(x, s.jacobian.col(a));
    for (int b = 0; b < a; ++b) {
      r(b, a) = s.frame[static_cast<std::size_t>(b)].dot(v);
      v -= r(b, a) * s.frame[static_cast<std::size_t>(b)];
    }
    r(a, a) = v.norm();
    if (!(r(a, a) > 1e-10 * scale)) throw Error(ErrorKind::Degenerate, "immersion degenerate: jacobian is rank deficient");
    s.frame[static_cast<std::size_t>(a)] = v / r(a, a);
  }
  s.to_frame = r.triangularView<Eigen::Upper>().solve(Mat6::Identity());

  // N_i = det[p, f_1..f_6, e_i], so det[p, f, N] > 0
  Eigen::Matrix<double, 8, 7> m;
  m.col(0) = x;
  for (int a = 0; a < 6; ++a) m.col(a + 1) = s.frame[static_cast<std::size_t>(a)];
  Vec8 n;
  for (int i = 0; i < 8; ++i) {
    Eigen::Matrix<double, 7, 7> minor;
    for (int row = 0, out = 0; row < 8; ++row)
      if (row != i) minor.row(out++) = m.row(row);
    n[i] = ((i + 1) % 2 == 0 ? 1.0 : -1.0) * minor.determinant();
  }
  n.normalize();
  s.normal = side == NormalSide::Chart ? n : Vec8(-n);

  const Hessian hess = chart.hessian(u);
  Mat6 k;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) k(i, j) = hess[static_cast<std::size_t>(i)].col(j).dot(s.normal);
  const Mat6 a = s.to_frame.transpose() * k * s.to_frame;
  s.A = 0.5 * (a + a.transpose());
  s.H = s.A.trace();
  s.A2 = s.A.squaredNorm();
  return s;
}

Vec8 xi_at(const ShapeData& shape, const Vec8& x) {
  shape.require_tangent(x);
  return s7::cross_at(shape.p.vec(), shape.normal, x);
}

Vec8 B_at(const Vec8& p, const Vec8& x, const Vec8& y) { return s7::cross_at(p, x, y); }

Vec8 G_at(const s7::SpherePoint& p, const Vec8& x, const Vec8& y, const Vec8& z) {
  require_sphere_tangent(p, x);
  require_sphere_tangent(p, y);
  require_sphere_tangent(p, z);
  return (s7::kTau0 / 4.0) * s7::psi_raise(p.vec(), x, y, z);
}

Vec8 G_fd(const s7::SpherePoint& p, const Vec8& x, const Vec8& y, const Vec8& z, double step) {
  require_sphere_tangent(p, x);
  require_sphere_tangent(p, y);
  require_sphere_tangent(p, z);
  const s7::AmbientField yf = [&](const Vec8& q) { return project_sphere(q, y); };
  const s7::AmbientField zf = [&](const Vec8& q) { return project_sphere(q, z); };
  const s7::AmbientField bf = [&](const Vec8& q) { return s7::cross_at(q, yf(q), zf(q)); };
  const Vec8 dy = s7::sphere_nabla(yf, p, x, step), dz = s7::sphere_nabla(zf, p, x, step);
  const Vec8& q = p.vec();
  return s7::sphere_nabla(bf, p, x, step) - s7::cross_at(q, dy, z) - s7::cross_at(q, y, dz);
}

Vec8 nabla_xi(const ShapeData& shape, const Vec8& x, const Vec8& y) {
  shape.require_tangent(x);
  shape.require_tangent(y);
  const Vec8& p = shape.p.vec();
  const Vec8& n = shape.normal;
  const Vec8 ax = shape.apply_A(x);
  return G_at(shape.p, x, n, y) - s7::phi_at(p, n, y, ax) * n - B_at(p, ax, y);
}

Vec8 nabla_xi_fd(const HypersurfaceChart& chart, const Coords& u, const Vec8& x, const Vec8& y, double step,
                 NormalSide side) {
  check_step(step);
  const ShapeData s0 = shape_at(chart, u, side);
  s0.require_tangent(x);
  s0.require_tangent(y);
  const Coords cx = s0.chart_direction(x), cy = s0.chart_direction(y);
  auto fields = [&](double t) {
    const ShapeData st = shape_at(chart, Coords(u + t * cx), side);
    const Vec8 yt = st.jacobian * cy;
    return std::pair<Vec8, Vec8>{s7::cross_at(st.p.vec(), st.normal, yt), yt};
  };
  const auto [xi_up, y_up] = fields(step);
  const auto [xi_dn, y_dn] = fields(-step);
  const Vec8 d_xi = (xi_up - xi_dn) / (2.0 * step);
  const Vec8 d_y = (y_up - y_dn) / (2.0 * step);
  return s0.project_tangent(d_xi) - xi_at(s0, s0.project_tangent(d_y));
}

std::vector<Vec8> sample_unit_tangents(const ShapeData& shape, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Vec8> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  while (static_cast<int>(out.size()) < count) {
    Vec6 c;
    for (int a = 0; a < 6; ++a) c[a] = normal(rng);
    if (c.norm() < 1e-12) continue;
    out.push_back(shape.from_components(c.normalized()));
  }
  return out;
}

double nk_defect(const ShapeData& shape, int samples, std::uint64_t seed) {
  if (samples < 1) throw Error(ErrorKind::InvalidArgument, "nk_defect needs at least one sample");
  double worst = 0.0;
  for (const Vec8& x : sample_unit_tangents(shape, samples, seed)) worst = std::max(worst, nabla_xi(shape, x, x).norm());
  return worst;
}

double umbilic_defect(const ShapeData& shape) { return (shape.A - (shape.H / 6.0) * Mat6::Identity()).norm(); }

double cross_defect(const ShapeData& shape, const Vec8& x) {
  shape.require_tangent(x);
  return shape.project_tangent(B_at(shape.p.vec(), shape.apply_A(x), x)).norm();
}

double sup_cross_defect(const ShapeData& shape, int samples, std::uint64_t seed) {
  if (samples < 1) throw Error(ErrorKind::InvalidArgument, "sup_cross_defect needs at least one sample");
  double worst = 0.0;
  for (const Vec8& x : sample_unit_tangents(shape, samples, seed)) worst = std::max(worst, cross_defect(shape, x));
  return worst;
}

double div_xi(const ShapeData& shape) {
  Vec6 d = Vec6::Zero();
  for (int b = 0; b < 6; ++b)
    for (int a = 0; a < 6; ++a) {
      const Vec8& ea = shape.frame[static_cast<std::size_t>(a)];
      d[b] += nabla_xi(shape, ea, shape.frame[static_cast<std::size_t>(b)]).dot(ea);
    }
  return d.norm();
}

double div_xi_fd(const HypersurfaceChart& chart, const Coords& u, double step) {
  const ShapeData s = shape_at(chart, u);
  Vec6 d = Vec6::Zero();
  for (int b = 0; b < 6; ++b)
    for (int a = 0; a < 6; ++a) {
      const Vec8& ea = s.frame[static_cast<std::size_t>(a)];
      d[b] += nabla_xi_fd(chart, u, ea, s.frame[static_cast<std::size_t>(b)], step).dot(ea);
    }
  return d.norm();
}

HyperCurvature hyper_curvature(const ShapeData& shape) {
  if (std::abs(shape.H) > 1e-8)
    throw Error(ErrorKind::RequiresMinimal, "formula requires minimality (|tr A| > 1e-8)");
  HyperCurvature c;
  c.ricci = 5.0 * Mat6::Identity() - shape.A * shape.A;
  c.scalar = 30.0 - shape.A2;
  return c;
}

double codazzi_residual(const HypersurfaceChart& chart, const Coords& u, int i, int j, double step) {
  check_index(i);
  check_index(j);
  check_step(step);
  const ShapeData s0 = shape_at(chart, u);
  auto a_of = [&](const Coords& v, int col) {
    const ShapeData s = shape_at(chart, v);
    return s.apply_A(s.jacobian.col(col));
  };
  auto derivative = [&](int dir, int col) {
    Coords up = u, dn = u;
    up[dir] += step;
    dn[dir] -= step;
    return s0.project_tangent((a_of(up, col) - a_of(dn, col)) / (2.0 * step));
  };
  return (derivative(i, j) - derivative(j, i)).norm();
}

Riemann intrinsic_riemann(const HypersurfaceChart& chart, const Coords& u, double step) {
  check_step(step);
  const Christoffel g0 = christoffel(chart, u, step);
  std::array<Christoffel, 6> dgamma;  // dgamma[i][l](j, k) = d_i Gamma^l_jk
  for (int i = 0; i < 6; ++i) {
    Coords up = u, dn = u;
    up[i] += step;
    dn[i] -= step;
    const Christoffel a = christoffel(chart, up, step), b = christoffel(chart, dn, step);
    for (int l = 0; l < 6; ++l)
      dgamma[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)] =
          (a[static_cast<std::size_t>(l)] - b[static_cast<std::size_t>(l)]) / (2.0 * step);
  }
  auto G = [&](int l, int i, int j) { return g0[static_cast<std::size_t>(l)](i, j); };
  auto dG = [&](int d, int l, int i, int j) {
    return dgamma[static_cast<std::size_t>(d)][static_cast<std::size_t>(l)](i, j);
  };
  Riemann r{};
  for (int l = 0; l < 6; ++l)
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j)
        for (int k = 0; k < 6; ++k) {
          double v = dG(i, l, j, k) - dG(j, l, i, k);
          for (int m = 0; m < 6; ++m) v += G(l, i, m) * G(m, j, k) - G(l, j, m) * G(m, i, k);
          riemann_at(r, l, i, j, k) = v;
        }
  return r;
}

double gauss_residual(const HypersurfaceChart& chart, const Coords& u, int i, int j, int k, double step) {
  check_index(i);
  check_index(j);
  check_index(k);
  const Riemann r = intrinsic_riemann(chart, u, step);
  const ShapeData s = shape_at(chart, u);
  const Jacobian& jac = s.jacobian;
  Vec8 lhs = Vec8::Zero();
  for (int l = 0; l < 6; ++l) lhs += riemann_at(r, l, i, j, k) * jac.col(l);
  const Vec8 di = jac.col(i), dj = jac.col(j), dk = jac.col(k);
  const Vec8 adi = s.apply_A(di), adj = s.apply_A(dj);
  const Vec8 rhs = dj.dot(dk) * di - di.dot(dk) * dj + adj.dot(dk) * adi - adi.dot(dk) * adj;
  return (lhs - rhs).norm();
}

double sectional_curvature(const HypersurfaceChart& chart, const Coords& u, int i, int j, double step) {
  check_index(i);
  check_index(j);
  if (i == j) throw Error(ErrorKind::InvalidArgument, "sectional curvature needs two distinct directions");
  const Riemann r = intrinsic_riemann(chart, u, step);
  const Mat6 g = coordinate_metric(chart, u);
  double num = 0.0;
  for (int l = 0; l < 6; ++l) num += riemann_at(r, l, i, j, j) * g(l, i);
  return num / (g(i, i) * g(j, j) - g(i, j) * g(i, j));
}

Vec8 g_of_b_residual(const s7::SpherePoint& p, const Vec8& x, const Vec8& y, const Vec8& z, const Vec8& w) {
  require_sphere_tangent(p, w);
  const Vec8& q = p.vec();
  const Vec8 lhs = G_at(p, B_at(q, w, z), x, y);
  const Vec8 rhs = (s7::kTau0 / 4.0) * (x.dot(z) * B_at(q, w, y) + y.dot(z) * B_at(q, x, w) -
                                       w.dot(x) * B_at(q, z, y) - w.dot(y) * B_at(q, x, z) +
                                       s7::phi_at(q, x, y, w) * z - s7::phi_at(q, x, y, z) * w);
  return lhs - rhs;
}

Vec8 b_of_g_residual(const s7::SpherePoint& p, const Vec8& x, const Vec8& y, const Vec8& z, const Vec8& w) {
  require_sphere_tangent(p, w);
  const Vec8& q = p.vec();
  return B_at(q, G_at(p, x, y, z), w) + G_at(p, B_at(q, x, y), z, w);
}

}  // namespace nearlyg2::hyper
