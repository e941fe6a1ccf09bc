#pragma once

// Uniform 6-dimensional lattices over chart coordinates and the finite
// difference Laplace-Beltrami operator of the induced metric.

#include <cstddef>
#include <functional>
#include <vector>

#include "nearlyg2/charts.hpp"
#include "nearlyg2/kernels/stencil.hpp"

namespace nearlyg2::grid {

using hyper::Coords;

struct GridSpec {
  Coords center = Coords::Zero();
  double delta = 5e-3;
  int nodes = 5;  // per axis
  int order = 2;  // stencil order, 2 or 4

  /// Stencil half-width: nodes this close to the boundary get no Laplacian.
  int radius() const { return order / 2; }
  hyper::Box box() const;
  std::size_t total_nodes() const;
  /// Throws on non-positive spacing, unsupported order, or too few / too many nodes.
  void validate() const;
};

/// Default node count per axis for a stencil order (smallest with one interior node layer around the center).
int default_nodes(int order);

class GridField {
 public:
  explicit GridField(const GridSpec& spec);

  const GridSpec& spec() const { return spec_; }
  std::size_t size() const { return values_.size(); }
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  std::ptrdiff_t stride(int axis) const { return strides_[static_cast<std::size_t>(axis)]; }
  std::array<int, 6> multi_index(std::size_t flat) const;
  std::size_t flat_index(const std::array<int, 6>& idx) const;
  Coords node(std::size_t flat) const;
  /// At least radius() nodes away from every face.
  bool interior(std::size_t flat) const;
  std::vector<std::size_t> interior_nodes() const;

 private:
  GridSpec spec_;
  std::array<std::ptrdiff_t, 6> strides_{};
  std::vector<double> values_;
};

GridField sample(const GridSpec& spec, const std::function<double(const Coords&)>& field);

/// Delta u = g^ij (d_i d_j u - Gamma^k_ij d_k u) at interior nodes (NaN elsewhere).
/// Throws OutOfDomain when the grid box leaves the chart's regular region.
GridField laplace_beltrami(const hyper::HypersurfaceChart& chart, const GridField& u,
                           kernels::Isa isa = kernels::best_isa());
GridField laplace_beltrami(const hyper::HypersurfaceChart& chart, const GridSpec& spec,
                           const std::function<double(const Coords&)>& field, kernels::Isa isa = kernels::best_isa());

/// Operator coefficients at one chart point, in kernel channel order.
std::array<double, kernels::kChannels> operator_coefficients(const hyper::HypersurfaceChart& chart, const Coords& u);

}  // namespace nearlyg2::grid
