#include "nearlyg2/charts.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <numbers>
#include <random>

#include "nearlyg2/error.hpp"

namespace nearlyg2::hyper {

bool Box::contains(const Coords& u) const { return (u.array() >= lo.array()).all() && (u.array() <= hi.array()).all(); }

bool Box::contains(const Box& b) const { return contains(b.lo) && contains(b.hi); }

Box Box::shrunk(double factor) const {
  const Coords c = center(), half = 0.5 * factor * (hi - lo);
  return {c - half, c + half};
}

std::vector<Coords> sample_points(const Box& box, int count, std::uint64_t seed) {
  if (count < 0) throw Error(ErrorKind::InvalidArgument, "sample count must be non-negative");
  const Box inner = box.shrunk(0.5);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Coords> out(static_cast<std::size_t>(count));
  for (Coords& c : out)
    for (int i = 0; i < 6; ++i) c[i] = inner.lo[i] + unit(rng) * (inner.hi[i] - inner.lo[i]);
  return out;
}

Jacobian HypersurfaceChart::jacobian(const Coords& u) const {
  Jacobian j;
  const double h = fd_step_;
  for (int i = 0; i < 6; ++i) {
    Coords up = u, dn = u;
    up[i] += h;
    dn[i] -= h;
    j.col(i) = (immerse(up) - immerse(dn)) / (2.0 * h);
  }
  return j;
}

Hessian HypersurfaceChart::hessian(const Coords& u) const {
  const double h = std::max(1e-4, fd_step_);
  auto at = [&](int i, double si, int j, double sj) {
    Coords v = u;
    v[i] += si * h;
    v[j] += sj * h;
    return immerse(v);
  };
  Hessian out;
  for (int i = 0; i < 6; ++i)
    for (int j = i; j < 6; ++j) {
      const Vec8 d = (at(i, 1, j, 1) - at(i, 1, j, -1) - at(i, -1, j, 1) + at(i, -1, j, -1)) / (4.0 * h * h);
      out[static_cast<std::size_t>(i)].col(j) = d;
      out[static_cast<std::size_t>(j)].col(i) = d;
    }
  return out;
}

FunctionChart::FunctionChart(std::string name, Box domain, std::function<Vec8(const Coords&)> immersion, double fd_step)
    : name_(std::move(name)), domain_(domain), f_(std::move(immersion)) {
  if (!(fd_step > 0.0)) throw Error(ErrorKind::InvalidArgument, "finite-difference step must be positive");
  if (!(domain.lo.array() < domain.hi.array()).all()) throw Error(ErrorKind::InvalidArgument, "empty chart domain");
  fd_step_ = fd_step;
}

// ---------------------------------------------------------------------------

SphericalProductChart::SphericalProductChart(std::string name, std::vector<SphereFactor> factors, double margin)
    : name_(std::move(name)) {
  constexpr double pi = std::numbers::pi;
  if (!(margin > 0.0) || margin >= 0.5) throw Error(ErrorKind::InvalidArgument, "chart margin must lie in (0, 0.5)");
  static constexpr std::array<double, 5> kPolarCenters{1.2, 1.9, 1.4, 1.7, 1.1};
  constexpr double kAzimuthCenter = 0.7;

  int offset = 0, used = 0;
  for (const SphereFactor& f : factors) {
    if (f.dim < 1 || static_cast<int>(f.ambient.size()) != f.dim + 1 || !(f.radius > 0.0))
      throw Error(ErrorKind::InvalidArgument, "malformed sphere factor");
    for (int a = 0; a <= f.dim; ++a) {
      Monomial m;
      m.ambient = f.ambient[static_cast<std::size_t>(a)];
      m.radius = f.radius;
      m.terms.fill(kOne);
      for (int j = 0; j < std::min(a, f.dim); ++j) m.terms[static_cast<std::size_t>(offset + j)] = kSin;
      if (a < f.dim) m.terms[static_cast<std::size_t>(offset + a)] = kCos;
      monomials_.push_back(m);
      used |= 1 << m.ambient;
    }
    for (int j = 0; j < f.dim; ++j) {
      const int c = offset + j;
      if (c >= 6) throw Error(ErrorKind::InvalidArgument, "sphere factors exceed six dimensions");
      if (j + 1 < f.dim) {
        domain_.lo[c] = margin;
        domain_.hi[c] = pi - margin;
        center_[c] = kPolarCenters[static_cast<std::size_t>(j % 5)];
      } else {
        domain_.lo[c] = -pi + margin;
        domain_.hi[c] = pi - margin;
        center_[c] = kAzimuthCenter;
      }
    }
    offset += f.dim;
  }
  if (offset != 6) throw Error(ErrorKind::InvalidArgument, "sphere factors must have total dimension 6");
  if (static_cast<int>(monomials_.size()) > 8 || std::popcount(static_cast<unsigned>(used)) != static_cast<int>(monomials_.size()))
    throw Error(ErrorKind::InvalidArgument, "sphere factors must use distinct ambient coordinates");
}

namespace {

struct TermValues {
  // [term][order]: order 0 value, 1 first derivative, 2 second derivative
  std::array<std::array<double, 3>, 3> v;
};

std::array<TermValues, 6> term_values(const Coords& u) {
  std::array<TermValues, 6> out;
  for (int j = 0; j < 6; ++j) {
    const double s = std::sin(u[j]), c = std::cos(u[j]);
    out[static_cast<std::size_t>(j)].v = {{{1.0, 0.0, 0.0}, {s, c, -s}, {c, -s, -c}}};
  }
  return out;
}

}  // namespace

Vec8 SphericalProductChart::immerse(const Coords& u) const {
  const auto tv = term_values(u);
  Vec8 x = Vec8::Zero();
  for (const Monomial& m : monomials_) {
    double prod = m.radius;
    for (int j = 0; j < 6; ++j) prod *= tv[static_cast<std::size_t>(j)].v[m.terms[static_cast<std::size_t>(j)]][0];
    x[m.ambient] = prod;
  }
  return x;
}

Jacobian SphericalProductChart::jacobian(const Coords& u) const {
  const auto tv = term_values(u);
  Jacobian jac = Jacobian::Zero();
  for (const Monomial& m : monomials_)
    for (int i = 0; i < 6; ++i) {
      if (m.terms[static_cast<std::size_t>(i)] == kOne) continue;
      double prod = m.radius;
      for (int j = 0; j < 6; ++j)
        prod *= tv[static_cast<std::size_t>(j)].v[m.terms[static_cast<std::size_t>(j)]][j == i ? 1 : 0];
      jac(m.ambient, i) = prod;
    }
  return jac;
}

Hessian SphericalProductChart::hessian(const Coords& u) const {
  const auto tv = term_values(u);
  Hessian hess;
  for (auto& h : hess) h.setZero();
  for (const Monomial& m : monomials_)
    for (int i = 0; i < 6; ++i) {
      if (m.terms[static_cast<std::size_t>(i)] == kOne) continue;
      for (int k = i; k < 6; ++k) {
        if (m.terms[static_cast<std::size_t>(k)] == kOne) continue;
        double prod = m.radius;
        for (int j = 0; j < 6; ++j) {
          const int order = (j == i) + (j == k);
          prod *= tv[static_cast<std::size_t>(j)].v[m.terms[static_cast<std::size_t>(j)]][order];
        }
        hess[static_cast<std::size_t>(i)](m.ambient, k) = prod;
        hess[static_cast<std::size_t>(k)](m.ambient, i) = prod;
      }
    }
  return hess;
}

// ---------------------------------------------------------------------------

ExampleSurface ExampleSurface::clifford(int k) {
  if (k < 1 || k > 5) throw Error(ErrorKind::InvalidArgument, "k out of range: clifford:k needs k in 1..5");
  return {ExampleKind::Clifford, k};
}

ExampleSurface ExampleSurface::parse(const std::string& selector) {
  if (selector == "s6") return geodesic_s6();
  const std::string prefix = "clifford:";
  if (selector.rfind(prefix, 0) == 0) {
    const std::string rest = selector.substr(prefix.size());
    int k = 0;
    const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), k);
    if (rest.empty() || ec != std::errc() || ptr != rest.data() + rest.size())
      throw Error(ErrorKind::Parse, "malformed example selector: " + selector);
    return clifford(k);
  }
  throw Error(ErrorKind::Parse, "unknown example: " + selector + " (expected s6 or clifford:k)");
}

std::string ExampleSurface::selector() const {
  return kind == ExampleKind::GeodesicS6 ? "s6" : "clifford:" + std::to_string(k);
}

double ExampleSurface::radius_a() const { return kind == ExampleKind::GeodesicS6 ? 1.0 : std::sqrt(k / 6.0); }

double ExampleSurface::radius_b() const { return kind == ExampleKind::GeodesicS6 ? 0.0 : std::sqrt((6 - k) / 6.0); }

std::unique_ptr<HypersurfaceChart> ExampleSurface::chart(double margin) const {
  if (kind == ExampleKind::GeodesicS6)
    return std::make_unique<SphericalProductChart>("s6", std::vector<SphereFactor>{{6, 1.0, {0, 1, 2, 3, 4, 5, 6}}},
                                                   margin);
  // The two factors take alternating ambient coordinates. With a contiguous
  // split, h vanishes identically for the default generator pair at odd k.
  static constexpr std::array<int, 8> kOrder{0, 2, 4, 6, 1, 3, 5, 7};
  SphereFactor first{k, radius_a(), {}}, second{6 - k, radius_b(), {}};
  for (int i = 0; i < 8; ++i) (i <= k ? first : second).ambient.push_back(kOrder[static_cast<std::size_t>(i)]);
  return std::make_unique<SphericalProductChart>(selector(), std::vector<SphereFactor>{first, second}, margin);
}

}  // namespace nearlyg2::hyper
