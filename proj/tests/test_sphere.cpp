#include <doctest.h>

#include <array>
#include <random>

#include <Eigen/LU>

#include "nearlyg2/error.hpp"
#include "nearlyg2/sphere.hpp"
#include "support/oracles.hpp"

using namespace nearlyg2;
using namespace nearlyg2::s7;

namespace {

Vec8 gaussian8(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Vec8 v;
  for (int i = 0; i < 8; ++i) v[i] = n(rng);
  return v;
}

SpherePoint random_point(std::mt19937_64& rng) { return SpherePoint::normalized(gaussian8(rng)); }

Vec8 random_tangent(const SpherePoint& p, std::mt19937_64& rng) { return tangent_project(p, gaussian8(rng)).vec(); }

double det8(const SpherePoint& p, const Frame& f) {
  Eigen::Matrix<double, 8, 8> m;
  m.col(0) = p.vec();
  for (int a = 0; a < 7; ++a) m.col(a + 1) = f[static_cast<std::size_t>(a)];
  return m.determinant();
}

}  // namespace

TEST_CASE("points and tangent vectors validate their inputs") {
  CHECK_THROWS_AS(SpherePoint(Vec8::Constant(1.0)), Error);
  CHECK_THROWS_AS(SpherePoint::normalized(Vec8::Zero()), Error);
  const SpherePoint p(Vec8::Unit(0));
  CHECK_THROWS_AS(TangentVector(p, Vec8::Unit(0)), Error);
  CHECK_NOTHROW(TangentVector(p, Vec8::Unit(3)));
  CHECK((tangent_project(p, Vec8::Constant(1.0)).vec()[0]) == 0.0);
}

TEST_CASE("recorded sign constants") {
  CHECK(kCrossSign == -1);
  CHECK(kPsiSign == -1);
  CHECK(kTau0 == 4.0);
}

TEST_CASE("at the real unit the cross product is the imaginary part of the octonion product") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 50; ++t) {
    Vec8 u = gaussian8(rng), v = gaussian8(rng);
    u[0] = v[0] = 0.0;
    const Vec8 b = cross_at(Vec8::Unit(0), u, v);
    CHECK(std::abs(b[0]) <= 1e-13);
    CHECK((b.tail<7>() - oracle::cross(u.tail<7>(), v.tail<7>())).norm() <= 1e-12);
  }
}

TEST_CASE("cross product at a point is a vector cross product on the tangent space") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    const SpherePoint p = random_point(rng);
    const Vec8 u = random_tangent(p, rng), v = random_tangent(p, rng);
    const Vec8 b = cross_at(p.vec(), u, v);
    CHECK(std::abs(b.dot(p.vec())) <= 1e-12);
    CHECK(std::abs(b.dot(u)) <= 1e-12);
    CHECK(std::abs(b.dot(v)) <= 1e-12);
    CHECK(b.squaredNorm() == doctest::Approx(u.squaredNorm() * v.squaredNorm() - std::pow(u.dot(v), 2)));
    CHECK((cross_s7(TangentVector(p, u, 1e-10), TangentVector(p, v, 1e-10)).vec() - b).norm() <= 1e-14);
    // B(u, B(u, v)) = -|u|^2 v + <u, v> u
    CHECK((cross_at(p.vec(), u, b) + u.squaredNorm() * v - u.dot(v) * u).norm() <= 1e-11);
  }
}

TEST_CASE("tangent frames are orthonormal and positively oriented") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const SpherePoint p = random_point(rng);
    const Frame f = tangent_frame(p);
    for (int a = 0; a < 7; ++a) {
      CHECK(std::abs(f[a].dot(p.vec())) <= 1e-13);
      for (int b = 0; b < 7; ++b) CHECK(std::abs(f[a].dot(f[b]) - (a == b ? 1.0 : 0.0)) <= 1e-13);
    }
    CHECK(det8(p, f) > 0.0);
    CHECK_NOTHROW(validate_frame(p, f));
  }
  const SpherePoint p(Vec8::Unit(7));
  Frame bad = tangent_frame(p);
  bad[1] = bad[0];
  CHECK_THROWS_AS(validate_frame(p, bad), Error);
}

TEST_CASE("phi and psi at a point") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 20; ++t) {
    const SpherePoint p = random_point(rng);
    const Frame f = tangent_frame(p);
    const G2Structure s = phi_psi_at(p, f);
    CHECK((s.metric.g - Mat7::Identity()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(s.metric.orientation == -1);
    for (int a = 0; a < 7; ++a)
      for (int b = a + 1; b < 7; ++b)
        for (int c = b + 1; c < 7; ++c)
          for (int d = c + 1; d < 7; ++d) {
            const std::array<int, 4> idx{a, b, c, d};
            CHECK(psi_at(f[a], f[b], f[c], f[d]) == doctest::Approx(s.psi.component(idx)).epsilon(1e-12));
          }
    const Vec8 x = random_tangent(p, rng), y = random_tangent(p, rng), z = random_tangent(p, rng);
    CHECK(psi_raise(p.vec(), x, y, z).dot(f[0]) == doctest::Approx(psi_at(x, y, z, f[0])).epsilon(1e-12));
  }
}

TEST_CASE("great circles and derivatives along them") {
  std::mt19937_64 rng(5);
  const SpherePoint p = random_point(rng);
  const Vec8 x = random_tangent(p, rng).normalized();
  for (double t : {0.1, 0.7, 2.0}) CHECK(great_circle(p.vec(), x, t).norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK((great_circle(p.vec(), x, 0.0) - p.vec()).norm() == 0.0);

  // position field: nabla_x q = x; conformal field Y - <Y,q> q: nabla_x = -<Y,p> x
  const AmbientField position = [](const Vec8& q) { return q; };
  const Vec8 y = gaussian8(rng);
  const AmbientField conformal = [&](const Vec8& q) { return Vec8(y - y.dot(q) * q); };
  for (Stencil s : {Stencil::Central2, Stencil::Central4}) {
    CHECK((sphere_nabla(position, p, x, 1e-4, s) - x).norm() <= 1e-8);
    CHECK((sphere_nabla(conformal, p, x, 1e-4, s) + y.dot(p.vec()) * x).norm() <= 1e-8);
  }
  CHECK_THROWS_AS(sphere_nabla(position, p, x, 0.0), Error);
  CHECK_THROWS_AS(sphere_nabla(position, p, p.vec(), 1e-4), Error);
}

TEST_CASE("torsion of the round sphere is the metric") {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 10; ++t) {
    const SpherePoint p = random_point(rng);
    const TorsionTensor tt = torsion_at(p, 1e-4);
    CHECK((tt.t - Mat7::Identity()).cwiseAbs().maxCoeff() <= 1e-8);
    const G2Structure s = phi_psi_at(p, tt.frame);
    const TorsionForms f = torsion_forms(tt.t, s);
    CHECK(f.tau0 == doctest::Approx(4.0).epsilon(1e-8));
    CHECK(f.norm1(s.metric) <= 1e-10);
    CHECK(f.norm2(s.metric) <= 1e-10);
    CHECK(f.norm3(s.metric) <= 1e-10);
    CHECK(torsion1_residual(nabla_phi(p, tt.frame, 1e-4), tt.t, s) <= 1e-8);
    CHECK(torsion3_residual(nabla_psi(p, tt.frame, 1e-4), tt.t, s) <= 1e-7);
  }
}

TEST_CASE("torsion converges at second order, faster with the wider stencil") {
  const SpherePoint p = SpherePoint::normalized((Vec8() << 0.3, -0.2, 0.5, 0.1, -0.7, 0.4, 0.2, -0.1).finished());
  const double e1 = (torsion_at(p, 2e-3).t - Mat7::Identity()).cwiseAbs().maxCoeff();
  const double e2 = (torsion_at(p, 1e-3).t - Mat7::Identity()).cwiseAbs().maxCoeff();
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.02));
  const double w = (torsion_at(p, 1e-3, Stencil::Central4).t - Mat7::Identity()).cwiseAbs().maxCoeff();
  CHECK(w < 1e-3 * e2);
}

TEST_CASE("torsion forms split and reassemble an arbitrary tensor") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n;
  const G2Structure s = G2Structure::from_phi(AltForm::phi0());
  for (int t = 0; t < 10; ++t) {
    Mat7 m;
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) m(i, j) = n(rng);
    const TorsionForms f = torsion_forms(m, s);
    CHECK(f.tau0 == doctest::Approx(4.0 * m.trace() / 7.0));
    CHECK(project2(f.tau1, s).part14.max_abs() <= 1e-10);
    CHECK(project2(f.tau2, s).part7.max_abs() <= 1e-10);
    const Split3 sp = project3(f.tau3, s);
    CHECK(sp.part1.max_abs() <= 1e-10);
    CHECK(sp.part7.max_abs() <= 1e-10);
    CHECK((recompose_torsion(f, s) - m).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("curvature of a nearly G2 structure with tau0 = 4") {
  const Curvature c = nearly_curvature(4.0, MetricTensor::identity());
  CHECK(c.scalar == 42.0);
  CHECK(c.ricci == 6.0 * Mat7::Identity());
  const G2Structure s = G2Structure::from_phi(AltForm::phi0());
  CHECK((ricci_from_constant_torsion(Mat7::Identity(), s) - 6.0 * Mat7::Identity()).cwiseAbs().maxCoeff() <= 1e-12);
  // same through the sphere frame at a random point
  std::mt19937_64 rng(8);
  const SpherePoint p = random_point(rng);
  const TorsionTensor tt = torsion_at(p, 1e-4);
  const G2Structure sp = phi_psi_at(p, tt.frame);
  CHECK((ricci_from_constant_torsion(tt.t, sp) - 6.0 * Mat7::Identity()).cwiseAbs().maxCoeff() <= 1e-7);
}
