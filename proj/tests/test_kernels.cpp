#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <random>
#include <vector>

#include "nearlyg2/kernels/stencil.hpp"

using namespace nearlyg2::kernels;

namespace {

constexpr int kN = 9;

struct Lattice {
  StencilPlan plan;
  std::vector<double> u;
  std::size_t first = 0, count = 0;
};

Lattice make_lattice(int order, std::mt19937_64& rng) {
  Lattice l;
  l.plan.order = order;
  std::ptrdiff_t s = 1;
  for (int a = kAxes - 1; a >= 0; --a) {
    l.plan.stride[a] = s;
    s *= kN;
  }
  std::uniform_real_distribution<double> h(0.01, 0.1), v(-1.0, 1.0);
  for (double& x : l.plan.spacing) x = h(rng);
  l.u.resize(static_cast<std::size_t>(s));
  for (double& x : l.u) x = v(rng);
  const int r = order / 2;
  for (int a = 0; a < kAxes; ++a) {
    l.first += static_cast<std::size_t>(r * l.plan.stride[a]);
    l.count += static_cast<std::size_t>((kN - 1 - 2 * r) * l.plan.stride[a]);
  }
  l.count += 1;
  return l;
}

std::vector<double> random_coeff(std::size_t count, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> v(-2.0, 2.0);
  std::vector<double> c(kChannels * count);
  for (double& x : c) x = v(rng);
  return c;
}

// operator with constant coefficients applied to a polynomial sampled on a lattice
double apply_at_center(int order, const std::array<double, kChannels>& c, double (*f)(const std::array<double, 6>&),
                       double h, const std::array<double, 6>& x0) {
  const int n = order + 1;
  StencilPlan plan;
  plan.order = order;
  std::ptrdiff_t s = 1;
  for (int a = kAxes - 1; a >= 0; --a) {
    plan.stride[a] = s;
    s *= n;
  }
  plan.spacing.fill(h);
  std::vector<double> u(static_cast<std::size_t>(s));
  for (std::size_t i = 0; i < u.size(); ++i) {
    std::array<double, 6> x{};
    std::size_t rest = i;
    for (int a = kAxes - 1; a >= 0; --a) {
      x[a] = x0[a] + (static_cast<int>(rest % n) - order / 2) * h;
      rest /= n;
    }
    u[i] = f(x);
  }
  std::size_t centre = 0;
  for (int a = 0; a < kAxes; ++a) centre += static_cast<std::size_t>(order / 2 * plan.stride[a]);
  std::vector<double> coeff(c.begin(), c.end());
  double out = 0.0;
  apply_operator_scalar(plan, u.data() + centre, coeff.data(), 1, &out);
  return out;
}

}  // namespace

TEST_CASE("AVX2 and scalar kernels agree bit for bit") {
  if (!isa_available(Isa::Avx2)) {
    MESSAGE("AVX2 kernel not available, skipping");
    return;
  }
  std::mt19937_64 rng(1);
  for (int order : {2, 4}) {
    const Lattice l = make_lattice(order, rng);
    // full range, and short ranges that exercise every tail length
    std::vector<std::size_t> counts{l.count};
    for (std::size_t c = 1; c <= 9; ++c) counts.push_back(c);
    for (std::size_t count : counts) {
      const std::vector<double> coeff = random_coeff(count, rng);
      std::vector<double> a(count), b(count);
      apply_operator_scalar(l.plan, l.u.data() + l.first, coeff.data(), count, a.data());
      apply_operator_avx2(l.plan, l.u.data() + l.first, coeff.data(), count, b.data());
      CHECK(std::memcmp(a.data(), b.data(), count * sizeof(double)) == 0);
    }
  }
}

TEST_CASE("dispatch") {
  CHECK(isa_available(Isa::Scalar));
  CHECK(std::string(isa_name(Isa::Scalar)) == "scalar");
  CHECK(std::string(isa_name(Isa::Avx2)) == "avx2");
  const char* old = std::getenv("NEARLYG2_ISA");
  const std::string saved = old ? old : "";
  setenv("NEARLYG2_ISA", "scalar", 1);
  CHECK(best_isa() == Isa::Scalar);
  unsetenv("NEARLYG2_ISA");
  CHECK(best_isa() == (isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar));
  if (old) setenv("NEARLYG2_ISA", saved.c_str(), 1);
  if (!isa_available(Isa::Avx2)) {
    StencilPlan plan;
    plan.spacing.fill(0.1);
    double u = 0.0, out = 0.0;
    std::vector<double> c(kChannels, 0.0);
    CHECK_THROWS(apply_operator_avx2(plan, &u, c.data(), 0, &out));
  }
}

TEST_CASE("plan validation") {
  StencilPlan plan;
  plan.spacing.fill(0.1);
  plan.order = 3;
  CHECK_THROWS(detail::make_scales(plan));
  plan.order = 2;
  plan.spacing[2] = 0.0;
  CHECK_THROWS(detail::make_scales(plan));
}

TEST_CASE("second order stencil is exact on quadratics") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> v(-1.0, 1.0);
  std::array<double, kChannels> c{};
  for (double& x : c) x = v(rng);
  // f = sum_i i x_i^2 + x_0 x_3 - 2 x_2 x_5 + sum_k (k+1) x_k
  auto f = +[](const std::array<double, 6>& x) {
    double s = x[0] * x[3] - 2.0 * x[2] * x[5];
    for (int i = 0; i < 6; ++i) s += i * x[i] * x[i] + (i + 1) * x[i];
    return s;
  };
  const std::array<double, 6> x0{0.3, -0.1, 0.2, 0.5, -0.4, 0.1};
  double expected = 0.0;
  for (int i = 0; i < 6; ++i) expected += c[i] * 2.0 * i;
  expected += c[6 + 2] * 1.0;    // pair (0, 3)
  expected += c[6 + 11] * -2.0;  // pair (2, 5)
  for (int k = 0; k < 6; ++k) {
    double d = 2.0 * k * x0[k] + (k + 1);
    if (k == 0) d += x0[3];
    if (k == 3) d += x0[0];
    if (k == 2) d -= 2.0 * x0[5];
    if (k == 5) d -= 2.0 * x0[2];
    expected += c[21 + k] * d;
  }
  CHECK(apply_at_center(2, c, f, 0.1, x0) == doctest::Approx(expected).epsilon(1e-11));
}

TEST_CASE("fourth order stencil is exact on quartics") {
  std::array<double, kChannels> c{};
  c[1] = 1.0;       // D_11
  c[6 + 0] = 0.5;   // D_01
  c[21 + 4] = 2.0;  // D_4
  auto f = +[](const std::array<double, 6>& x) {
    return x[1] * x[1] * x[1] * x[1] + x[0] * x[0] * x[1] * x[1] + x[4] * x[4] * x[4] * x[4] + x[0] * x[4];
  };
  const std::array<double, 6> x0{0.3, -0.7, 0.2, 0.5, 0.6, 0.1};
  const double expected = (12.0 * x0[1] * x0[1] + 2.0 * x0[0] * x0[0]) + 0.5 * (4.0 * x0[0] * x0[1]) +
                          2.0 * (4.0 * x0[4] * x0[4] * x0[4] + x0[0]);
  CHECK(apply_at_center(4, c, f, 0.1, x0) == doctest::Approx(expected).epsilon(1e-10));
  // the second order stencil is not
  CHECK(std::abs(apply_at_center(2, c, f, 0.1, x0) - expected) > 1e-3);
}
