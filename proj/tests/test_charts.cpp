#include <doctest.h>

#include <cmath>
#include <string>

#include "nearlyg2/charts.hpp"
#include "nearlyg2/error.hpp"

using namespace nearlyg2;
using namespace nearlyg2::hyper;

namespace {

ErrorKind parse_error(const std::string& s, std::string* msg = nullptr) {
  try {
    ExampleSurface::parse(s);
  } catch (const Error& e) {
    if (msg) *msg = e.what();
    return e.kind();
  }
  FAIL("expected an error for " << s);
  return ErrorKind::InvalidArgument;
}

std::vector<ExampleSurface> all_examples() {
  std::vector<ExampleSurface> v{ExampleSurface::geodesic_s6()};
  for (int k = 1; k <= 5; ++k) v.push_back(ExampleSurface::clifford(k));
  return v;
}

}  // namespace

TEST_CASE("example selectors") {
  CHECK(ExampleSurface::parse("s6").kind == ExampleKind::GeodesicS6);
  const ExampleSurface c = ExampleSurface::parse("clifford:3");
  CHECK(c.kind == ExampleKind::Clifford);
  CHECK(c.k == 3);
  CHECK(c.selector() == "clifford:3");
  std::string msg;
  CHECK(parse_error("clifford:7", &msg) == ErrorKind::InvalidArgument);
  CHECK(msg.find("k out of range") != std::string::npos);
  CHECK(parse_error("clifford:0") == ErrorKind::InvalidArgument);
  CHECK(parse_error("clifford:") == ErrorKind::Parse);
  CHECK(parse_error("clifford:2x") == ErrorKind::Parse);
  CHECK(parse_error("torus") == ErrorKind::Parse);
}

TEST_CASE("Clifford radii") {
  for (int k = 1; k <= 5; ++k) {
    const ExampleSurface c = ExampleSurface::clifford(k);
    CHECK(c.radius_a() * c.radius_a() + c.radius_b() * c.radius_b() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(c.radius_a() == doctest::Approx(std::sqrt(k / 6.0)));
    CHECK(c.expected_a2() == 6.0);
  }
  CHECK(ExampleSurface::geodesic_s6().expected_a2() == 0.0);
}

TEST_CASE("example immersions land on the unit sphere") {
  for (const ExampleSurface& ex : all_examples()) {
    const auto chart = ex.chart();
    for (const Coords& u : sample_points(chart->domain(), 50, 1)) CHECK(std::abs(chart->immerse(u).norm() - 1.0) <= 1e-12);
    CHECK(chart->domain().contains(chart->default_center()));
  }
}

TEST_CASE("closed-form derivatives match finite differences") {
  for (const ExampleSurface& ex : all_examples()) {
    const auto chart = ex.chart();
    const FunctionChart fd("fd", chart->domain(), [&](const Coords& u) { return chart->immerse(u); });
    for (const Coords& u : sample_points(chart->domain(), 10, 2)) {
      CHECK((chart->jacobian(u) - fd.jacobian(u)).cwiseAbs().maxCoeff() <= 1e-9);
      const Hessian a = chart->hessian(u), b = fd.hessian(u);
      for (int i = 0; i < 6; ++i) {
        CHECK((a[i] - b[i]).cwiseAbs().maxCoeff() <= 1e-6);
        for (int j = 0; j < 6; ++j) CHECK((a[i].col(j) - a[j].col(i)).norm() == 0.0);
      }
    }
  }
}

TEST_CASE("product chart validation") {
  CHECK_THROWS_AS(SphericalProductChart("bad", {{5, 1.0, {0, 1, 2, 3, 4, 5}}}), Error);
  CHECK_THROWS_AS(SphericalProductChart("dup", {{1, 0.6, {0, 1}}, {5, 0.8, {1, 2, 3, 4, 5, 6}}}), Error);
  CHECK_NOTHROW(SphericalProductChart("ok", {{1, 0.6, {0, 1}}, {5, 0.8, {2, 3, 4, 5, 6, 7}}}));
}

TEST_CASE("boxes and sampling") {
  const Box b{Coords::Constant(-1.0), Coords::Constant(3.0)};
  CHECK(b.contains(Coords::Zero()));
  CHECK_FALSE(b.contains(Coords::Constant(3.5)));
  const Box s = b.shrunk(0.5);
  CHECK(s.lo == Coords::Constant(0.0));
  CHECK(s.hi == Coords::Constant(2.0));
  CHECK(b.contains(s));
  CHECK_FALSE(s.contains(b));

  const auto p1 = sample_points(b, 20, 5), p2 = sample_points(b, 20, 5), p3 = sample_points(b, 20, 6);
  CHECK(p1 == p2);
  CHECK(p1 != p3);
  for (const Coords& u : p1) CHECK(s.contains(u));
  CHECK(sample_points(b, 0, 1).empty());
  CHECK_THROWS_AS(sample_points(b, -1, 1), Error);
}
