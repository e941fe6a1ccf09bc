#include "nearlyg2/grid.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/LU>

#include "nearlyg2/error.hpp"

namespace nearlyg2::grid {

namespace {
constexpr int kMaxNodes = 11;
}

hyper::Box GridSpec::box() const {
  const double half = 0.5 * (nodes - 1) * delta;
  return {center.array() - half, center.array() + half};
}

std::size_t GridSpec::total_nodes() const {
  std::size_t n = 1;
  for (int i = 0; i < 6; ++i) n *= static_cast<std::size_t>(nodes);
  return n;
}

void GridSpec::validate() const {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw Error(ErrorKind::InvalidArgument, "grid spacing must be positive");
  if (order != 2 && order != 4) throw Error(ErrorKind::InvalidArgument, "stencil order must be 2 or 4");
  if (nodes < order + 1)
    throw Error(ErrorKind::InvalidArgument, "grid needs at least " + std::to_string(order + 1) + " nodes per axis");
  if (nodes > kMaxNodes)
    throw Error(ErrorKind::InvalidArgument, "grid is limited to " + std::to_string(kMaxNodes) + " nodes per axis");
  if (!center.allFinite()) throw Error(ErrorKind::InvalidArgument, "grid center is not finite");
}

int default_nodes(int order) { return order == 4 ? 7 : 5; }

GridField::GridField(const GridSpec& spec) : spec_(spec) {
  spec.validate();
  std::ptrdiff_t s = 1;
  for (int axis = 5; axis >= 0; --axis) {
    strides_[static_cast<std::size_t>(axis)] = s;
    s *= spec.nodes;
  }
  values_.assign(spec.total_nodes(), 0.0);
}

std::array<int, 6> GridField::multi_index(std::size_t flat) const {
  std::array<int, 6> idx{};
  for (int axis = 5; axis >= 0; --axis) {
    idx[static_cast<std::size_t>(axis)] = static_cast<int>(flat % static_cast<std::size_t>(spec_.nodes));
    flat /= static_cast<std::size_t>(spec_.nodes);
  }
  return idx;
}

std::size_t GridField::flat_index(const std::array<int, 6>& idx) const {
  std::size_t flat = 0;
  for (int axis = 0; axis < 6; ++axis)
    flat += static_cast<std::size_t>(idx[static_cast<std::size_t>(axis)]) *
            static_cast<std::size_t>(strides_[static_cast<std::size_t>(axis)]);
  return flat;
}

Coords GridField::node(std::size_t flat) const {
  const std::array<int, 6> idx = multi_index(flat);
  const hyper::Box b = spec_.box();
  Coords u;
  for (int axis = 0; axis < 6; ++axis) u[axis] = b.lo[axis] + idx[static_cast<std::size_t>(axis)] * spec_.delta;
  return u;
}

bool GridField::interior(std::size_t flat) const {
  const int r = spec_.radius();
  for (int i : multi_index(flat))
    if (i < r || i > spec_.nodes - 1 - r) return false;
  return true;
}

std::vector<std::size_t> GridField::interior_nodes() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (interior(i)) out.push_back(i);
  return out;
}

GridField sample(const GridSpec& spec, const std::function<double(const Coords&)>& field) {
  GridField f(spec);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = field(f.node(i));
  return f;
}

std::array<double, kernels::kChannels> operator_coefficients(const hyper::HypersurfaceChart& chart, const Coords& u) {
  using Mat6 = Eigen::Matrix<double, 6, 6>;
  const hyper::Jacobian j = chart.jacobian(u);
  const hyper::Hessian hess = chart.hessian(u);
  const Mat6 g = j.transpose() * j;
  const Mat6 ginv = g.inverse();
  // Gamma^k_ij = g^kl <d_i d_j F, d_l F>
  Eigen::Matrix<double, 6, 1> b = Eigen::Matrix<double, 6, 1>::Zero();
  for (int i = 0; i < 6; ++i)
    for (int jj = 0; jj < 6; ++jj) {
      const Eigen::Matrix<double, 6, 1> lowered = j.transpose() * hess[static_cast<std::size_t>(i)].col(jj);
      b -= ginv(i, jj) * (ginv * lowered);
    }
  std::array<double, kernels::kChannels> c{};
  int ch = 0;
  for (int i = 0; i < 6; ++i) c[static_cast<std::size_t>(ch++)] = ginv(i, i);
  for (const auto& [i, jj] : kernels::detail::kMixedPairs) c[static_cast<std::size_t>(ch++)] = 2.0 * ginv(i, jj);
  for (int k = 0; k < 6; ++k) c[static_cast<std::size_t>(ch++)] = b[k];
  return c;
}

GridField laplace_beltrami(const hyper::HypersurfaceChart& chart, const GridField& u, kernels::Isa isa) {
  const GridSpec& spec = u.spec();
  if (!chart.domain().contains(spec.box()))
    throw Error(ErrorKind::OutOfDomain, "grid box touches the singular locus of chart " + chart.name());

  const std::size_t first = u.flat_index({spec.radius(), spec.radius(), spec.radius(), spec.radius(), spec.radius(),
                                          spec.radius()});
  const int hi = spec.nodes - 1 - spec.radius();
  const std::size_t last = u.flat_index({hi, hi, hi, hi, hi, hi});
  const std::size_t count = last - first + 1;

  std::vector<double> coeff(static_cast<std::size_t>(kernels::kChannels) * count, 0.0);
  for (std::size_t t = 0; t < count; ++t) {
    if (!u.interior(first + t)) continue;
    const auto c = operator_coefficients(chart, u.node(first + t));
    for (int ch = 0; ch < kernels::kChannels; ++ch) coeff[static_cast<std::size_t>(ch) * count + t] = c[static_cast<std::size_t>(ch)];
  }

  kernels::StencilPlan plan;
  plan.order = spec.order;
  for (int axis = 0; axis < 6; ++axis) {
    plan.stride[static_cast<std::size_t>(axis)] = u.stride(axis);
    plan.spacing[static_cast<std::size_t>(axis)] = spec.delta;
  }
  std::vector<double> out(count);
  kernels::apply_operator(plan, u.values().data() + first, coeff.data(), count, out.data(), isa);

  GridField result(spec);
  for (std::size_t i = 0; i < result.size(); ++i) result[i] = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t t = 0; t < count; ++t)
    if (u.interior(first + t)) result[first + t] = out[t];
  return result;
}

GridField laplace_beltrami(const hyper::HypersurfaceChart& chart, const GridSpec& spec,
                           const std::function<double(const Coords&)>& field, kernels::Isa isa) {
  spec.validate();
  if (!chart.domain().contains(spec.box()))
    throw Error(ErrorKind::OutOfDomain, "grid box touches the singular locus of chart " + chart.name());
  return laplace_beltrami(chart, sample(spec, field), isa);
}

}  // namespace nearlyg2::grid
