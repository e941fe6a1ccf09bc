#pragma once

// Parametrized hypersurfaces M^6 -> S^7 and the built-in examples.

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "nearlyg2/octonion.hpp"

namespace nearlyg2::hyper {

using Coords = Eigen::Matrix<double, 6, 1>;
using Jacobian = Eigen::Matrix<double, 8, 6>;
/// hessian[i].col(j) = d_i d_j F
using Hessian = std::array<Jacobian, 6>;

struct Box {
  Coords lo = Coords::Zero();
  Coords hi = Coords::Zero();

  bool contains(const Coords& u) const;
  bool contains(const Box& b) const;
  Coords center() const { return 0.5 * (lo + hi); }
  /// Same center, each side scaled by `factor`.
  Box shrunk(double factor) const;
};

/// Uniform random points in the central half of `box` (seeded, reproducible).
std::vector<Coords> sample_points(const Box& box, int count, std::uint64_t seed);

class HypersurfaceChart {
 public:
  virtual ~HypersurfaceChart() = default;

  virtual std::string name() const = 0;
  /// Closed box on which the immersion is regular (already inset from any coordinate singularity).
  virtual Box domain() const = 0;
  virtual Vec8 immerse(const Coords& u) const = 0;
  /// Defaults are central differences of immerse / jacobian.
  virtual Jacobian jacobian(const Coords& u) const;
  virtual Hessian hessian(const Coords& u) const;
  virtual Coords default_center() const { return domain().center(); }

 protected:
  double fd_step_ = 1e-5;
};

/// A chart given only by its immersion; derivatives by finite differences.
class FunctionChart final : public HypersurfaceChart {
 public:
  FunctionChart(std::string name, Box domain, std::function<Vec8(const Coords&)> immersion, double fd_step = 1e-5);

  std::string name() const override { return name_; }
  Box domain() const override { return domain_; }
  Vec8 immerse(const Coords& u) const override { return f_(u); }

 private:
  std::string name_;
  Box domain_;
  std::function<Vec8(const Coords&)> f_;
};

/// Round sphere S^m(radius) written in hyperspherical angles on the listed
/// ambient coordinates (m + 1 of them).
struct SphereFactor {
  int dim = 0;
  double radius = 1.0;
  std::vector<int> ambient;
};

/// Product of round spheres with closed-form derivatives. The chart
/// coordinates are the angles of the factors, in factor order; polar angles
/// range over [margin, pi - margin], the last angle of each factor over
/// [-pi + margin, pi - margin].
class SphericalProductChart final : public HypersurfaceChart {
 public:
  SphericalProductChart(std::string name, std::vector<SphereFactor> factors, double margin = 0.1);

  std::string name() const override { return name_; }
  Box domain() const override { return domain_; }
  Vec8 immerse(const Coords& u) const override;
  Jacobian jacobian(const Coords& u) const override;
  Hessian hessian(const Coords& u) const override;
  Coords default_center() const override { return center_; }

 private:
  // x_a = radius * prod_j g_aj(u_j) with g in {1, sin, cos}
  enum Term : unsigned char { kOne, kSin, kCos };
  struct Monomial {
    int ambient = 0;
    double radius = 1.0;
    std::array<Term, 6> terms{};
  };

  std::string name_;
  Box domain_;
  Coords center_;
  std::vector<Monomial> monomials_;
};

enum class ExampleKind { GeodesicS6, Clifford };

struct ExampleSurface {
  ExampleKind kind = ExampleKind::GeodesicS6;
  int k = 0;

  /// "s6" or "clifford:k" with k in 1..5.
  static ExampleSurface parse(const std::string& selector);
  static ExampleSurface geodesic_s6() { return {}; }
  static ExampleSurface clifford(int k);

  std::string selector() const;
  /// Radii of the two factors (1 and 0 for the geodesic S^6).
  double radius_a() const;
  double radius_b() const;
  /// Closed-form |A|^2: 0 on S^6, 6 on every Clifford hypersurface.
  double expected_a2() const { return kind == ExampleKind::GeodesicS6 ? 0.0 : 6.0; }

  std::unique_ptr<HypersurfaceChart> chart(double margin = 0.1) const;
};

}  // namespace nearlyg2::hyper
