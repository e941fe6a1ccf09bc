#include "nearlyg2/sphere.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/LU>

#include "nearlyg2/error.hpp"

namespace nearlyg2::s7 {
namespace {

void check_step(double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw Error(ErrorKind::InvalidArgument, "step must be positive");
}

void check_tangent(const Vec8& p, const Vec8& x, const char* what) {
  if (std::abs(x.dot(p)) > 1e-10 * std::max(1.0, x.norm()))
    throw Error(ErrorKind::InvalidArgument, std::string(what) + " is not tangent to S^7 at the base point");
}

// Stencil offsets and weights for a first derivative, in units of the step.
struct FirstDerivative {
  std::vector<double> offsets, weights;
};

FirstDerivative first_derivative(Stencil stencil) {
  if (stencil == Stencil::Central4) return {{-2.0, -1.0, 1.0, 2.0}, {1.0 / 12, -8.0 / 12, 8.0 / 12, -1.0 / 12}};
  return {{-1.0, 1.0}, {-0.5, 0.5}};
}

Vec8 project(const Vec8& q, const Vec8& v) { return v - v.dot(q) * q; }

AltForm phi_components(const Vec8& q, const Frame& frame) {
  std::array<Vec8, 7> v;
  for (int a = 0; a < 7; ++a) v[static_cast<std::size_t>(a)] = project(q, frame[static_cast<std::size_t>(a)]);
  AltForm phi(3);
  for (int pos = 0; pos < phi.size(); ++pos) {
    unsigned m = form_mask(3, pos);
    std::array<int, 3> idx{};
    for (int s = 0; s < 3; ++s, m &= m - 1) idx[static_cast<std::size_t>(s)] = std::countr_zero(m);
    phi[pos] = phi_at(q, v[static_cast<std::size_t>(idx[0])], v[static_cast<std::size_t>(idx[1])],
                      v[static_cast<std::size_t>(idx[2])]);
  }
  return phi;
}

template <class Sample>
std::array<AltForm, 7> differentiate(const SpherePoint& p, const Frame& frame, double step, Stencil stencil,
                                     int degree, Sample sample) {
  check_step(step);
  validate_frame(p, frame);
  const FirstDerivative d = first_derivative(stencil);
  std::array<AltForm, 7> out;
  for (int l = 0; l < 7; ++l) {
    AltForm acc(degree);
    for (std::size_t s = 0; s < d.offsets.size(); ++s) {
      const Vec8 q = great_circle(p.vec(), frame[static_cast<std::size_t>(l)], d.offsets[s] * step);
      acc += d.weights[s] * sample(q);
    }
    out[static_cast<std::size_t>(l)] = acc * (1.0 / step);
  }
  return out;
}

Mat7 as_matrix(const AltForm& beta) {
  Mat7 m = Mat7::Zero();
  for (int pos = 0; pos < beta.size(); ++pos) {
    const unsigned mask = form_mask(2, pos);
    const int i = std::countr_zero(mask), j = std::countr_zero(mask & (mask - 1));
    m(i, j) = beta[pos];
    m(j, i) = -beta[pos];
  }
  return m;
}

double form_norm(const AltForm& a, const MetricTensor& g) { return std::sqrt(std::max(0.0, inner(a, a, g))); }

}  // namespace

SpherePoint::SpherePoint(const Vec8& p, double tol) : p_(p) {
  if (!p.allFinite() || std::abs(p.norm() - 1.0) > tol)
    throw Error(ErrorKind::InvalidArgument, "sphere point must have unit norm");
}

SpherePoint SpherePoint::normalized(const Vec8& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw Error(ErrorKind::InvalidArgument, "cannot normalize a zero vector");
  return SpherePoint(v / n);
}

TangentVector::TangentVector(const SpherePoint& base, const Vec8& v, double tol) : base_(base), v_(v) {
  if (!v.allFinite() || std::abs(v.dot(base.vec())) > tol * std::max(1.0, v.norm()))
    throw Error(ErrorKind::InvalidArgument, "tangent vector is not orthogonal to its base point");
}

TangentVector tangent_project(const SpherePoint& p, const Vec8& v) {
  const Vec8 w = project(p.vec(), v);
  // a second pass removes the rounding left by the first
  return TangentVector(p, project(p.vec(), w));
}

Vec8 cross_at(const Vec8& p, const Vec8& u, const Vec8& v) { return kCrossSign * oct::cross3(p, u, v); }

double phi_at(const Vec8& p, const Vec8& u, const Vec8& v, const Vec8& w) { return cross_at(p, u, v).dot(w); }

double psi_at(const Vec8& u, const Vec8& v, const Vec8& w, const Vec8& x) {
  return kPsiSign * oct::cayley_form(u, v, w, x);
}

Vec8 psi_raise(const Vec8& p, const Vec8& x, const Vec8& y, const Vec8& z) {
  return project(p, kPsiSign * oct::cross3(x, y, z));
}

TangentVector cross_s7(const TangentVector& u, const TangentVector& v) {
  if ((u.base().vec() - v.base().vec()).cwiseAbs().maxCoeff() > 1e-12)
    throw Error(ErrorKind::InvalidArgument, "cross_s7: tangent vectors have different base points");
  const Vec8& p = u.base().vec();
  return TangentVector(u.base(), project(p, cross_at(p, u.vec(), v.vec())), 1e-10);
}

Frame tangent_frame(const SpherePoint& p) {
  const Vec8& x = p.vec();
  std::array<int, 8> order{};
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return std::abs(x[a]) < std::abs(x[b]); });
  Frame f;
  for (int a = 0; a < 7; ++a) {
    Vec8 v = project(x, Vec8::Unit(order[static_cast<std::size_t>(a)]));
    for (int b = 0; b < a; ++b) v -= v.dot(f[static_cast<std::size_t>(b)]) * f[static_cast<std::size_t>(b)];
    v = project(x, v);
    f[static_cast<std::size_t>(a)] = v.normalized();
  }
  Eigen::Matrix<double, 8, 8> m;
  m.col(0) = x;
  for (int a = 0; a < 7; ++a) m.col(a + 1) = f[static_cast<std::size_t>(a)];
  if (m.determinant() < 0.0) f[6] = -f[6];
  return f;
}

void validate_frame(const SpherePoint& p, const Frame& frame) {
  for (int a = 0; a < 7; ++a) {
    const Vec8& fa = frame[static_cast<std::size_t>(a)];
    if (std::abs(fa.dot(p.vec())) > 1e-10) throw Error(ErrorKind::Degenerate, "frame vector not tangent to S^7");
    for (int b = a; b < 7; ++b) {
      const double expected = a == b ? 1.0 : 0.0;
      if (std::abs(fa.dot(frame[static_cast<std::size_t>(b)]) - expected) > 1e-10)
        throw Error(ErrorKind::Degenerate, "frame is not orthonormal");
    }
  }
}

G2Structure phi_psi_at(const SpherePoint& p, const Frame& frame) {
  validate_frame(p, frame);
  return G2Structure::from_phi(phi_components(p.vec(), frame));
}

Vec8 great_circle(const Vec8& p, const Vec8& x, double t) {
  const double n = x.norm();
  if (n == 0.0) return p;
  return std::cos(t * n) * p + std::sin(t * n) * (x / n);
}

Vec8 sphere_nabla(const AmbientField& field, const SpherePoint& p, const Vec8& x, double step, Stencil stencil) {
  check_step(step);
  check_tangent(p.vec(), x, "direction");
  const FirstDerivative d = first_derivative(stencil);
  Vec8 acc = Vec8::Zero();
  for (std::size_t s = 0; s < d.offsets.size(); ++s) acc += d.weights[s] * field(great_circle(p.vec(), x, d.offsets[s] * step));
  return project(p.vec(), acc / step);
}

std::array<AltForm, 7> nabla_phi(const SpherePoint& p, const Frame& frame, double step, Stencil stencil) {
  return differentiate(p, frame, step, stencil, 3, [&](const Vec8& q) { return phi_components(q, frame); });
}

std::array<AltForm, 7> nabla_psi(const SpherePoint& p, const Frame& frame, double step, Stencil stencil) {
  return differentiate(p, frame, step, stencil, 4,
                       [&](const Vec8& q) { return G2Structure::from_phi(phi_components(q, frame)).psi; });
}

Mat7 torsion_from_derivatives(const std::array<AltForm, 7>& dphi, const G2Structure& s) {
  std::array<AltForm, 7> contracted;
  for (int m = 0; m < 7; ++m) contracted[static_cast<std::size_t>(m)] = interior(Vec7::Unit(m), s.psi);
  Mat7 t;
  for (int l = 0; l < 7; ++l)
    for (int m = 0; m < 7; ++m)
      t(l, m) = 0.25 * inner(dphi[static_cast<std::size_t>(l)], contracted[static_cast<std::size_t>(m)], s.metric);
  return t;
}

TorsionTensor torsion_at(const SpherePoint& p, double step, Stencil stencil) {
  return torsion_at(p, tangent_frame(p), step, stencil);
}

TorsionTensor torsion_at(const SpherePoint& p, const Frame& frame, double step, Stencil stencil) {
  check_step(step);
  const G2Structure s = phi_psi_at(p, frame);
  TorsionTensor out;
  out.frame = frame;
  out.t = torsion_from_derivatives(nabla_phi(p, frame, step, stencil), s);
  return out;
}

double TorsionForms::norm1(const MetricTensor& g) const { return form_norm(tau1, g); }
double TorsionForms::norm2(const MetricTensor& g) const { return form_norm(tau2, g); }
double TorsionForms::norm3(const MetricTensor& g) const { return form_norm(tau3, g); }

TorsionForms torsion_forms(const Mat7& t, const G2Structure& s) {
  const Mat7 ginv = s.metric.inverse();
  const double trace = (ginv.cwiseProduct(t)).sum();
  TorsionForms out;
  out.tau0 = 4.0 * trace / 7.0;

  const Mat7 sym0 = 0.5 * (t + t.transpose()) - (trace / 7.0) * s.metric.g;
  out.tau3 = project3(sym2_to_3form(Sym2{-sym0}, s.phi, s.metric), s).part27;

  AltForm anti(2);
  for (int pos = 0; pos < anti.size(); ++pos) {
    const unsigned mask = form_mask(2, pos);
    const int i = std::countr_zero(mask), j = std::countr_zero(mask & (mask - 1));
    anti[pos] = 0.5 * (t(i, j) - t(j, i));
  }
  const Split2 split = project2(anti, s);
  out.tau1 = split.part7;
  out.tau2 = -2.0 * split.part14;
  return out;
}

Mat7 recompose_torsion(const TorsionForms& forms, const G2Structure& s) {
  return (forms.tau0 / 4.0) * s.metric.g - sym2_from_3form(forms.tau3, s.phi, s.metric).h + as_matrix(forms.tau1) -
         0.5 * as_matrix(forms.tau2);
}

double torsion1_residual(const std::array<AltForm, 7>& dphi, const Mat7& t, const G2Structure& s) {
  const Mat7 raised = t * s.metric.inverse();
  double worst = 0.0;
  for (int i = 0; i < 7; ++i) {
    const AltForm r = dphi[static_cast<std::size_t>(i)] - interior(raised.row(i).transpose(), s.psi);
    worst = std::max(worst, r.max_abs());
  }
  return worst;
}

double torsion3_residual(const std::array<AltForm, 7>& dpsi, const Mat7& t, const G2Structure& s) {
  double worst = 0.0;
  for (int m = 0; m < 7; ++m) {
    AltForm alpha(1);
    for (int i = 0; i < 7; ++i) alpha[i] = t(m, i);
    const AltForm r = dpsi[static_cast<std::size_t>(m)] + wedge(alpha, s.phi);
    worst = std::max(worst, r.max_abs());
  }
  return worst;
}

Curvature nearly_curvature(double tau0, const MetricTensor& g) {
  Curvature c;
  c.ricci = (3.0 / 8.0) * tau0 * tau0 * g.g;
  c.scalar = (g.inverse().cwiseProduct(c.ricci)).sum();
  return c;
}

Mat7 ricci_from_constant_torsion(const Mat7& t, const G2Structure& s) {
  const Mat7 u = s.metric.inverse();
  const double trace = (u.cwiseProduct(t)).sum();
  const Mat7 tu = t * u;            // T_jb g^bq
  const Mat7 utu = u * t * u;       // g^li T_ia g^ap
  Mat7 r = -t * u * t + trace * t;
  for (int j = 0; j < 7; ++j)
    for (int k = 0; k < 7; ++k) {
      double sum = 0.0;
      for (int l = 0; l < 7; ++l)
        for (int p = 0; p < 7; ++p) {
          if (l == p) continue;
          for (int q = 0; q < 7; ++q) {
            if (q == l || q == p || q == k || l == k || p == k) continue;
            const std::array<int, 4> idx{l, p, q, k};
            sum += utu(l, p) * tu(j, q) * s.psi.component(idx);
          }
        }
      r(j, k) -= sum;
    }
  return r;
}

}  // namespace nearlyg2::s7
