#pragma once

// Conformal fields of S^7 restricted to a hypersurface, the function
// h = g(xi W, W~), its gradient and divergence identities, and the grid check
// of  Delta h = -(|A|^2 + 6) h.

#include <string>
#include <vector>

#include "nearlyg2/grid.hpp"
#include "nearlyg2/hypersurface.hpp"

namespace nearlyg2::eigen {

using hyper::Coords;
using hyper::HypersurfaceChart;
using hyper::ShapeData;

/// Y = V + f p on S^7: V = Y - <Y,p> p, f = <Y,p>.
struct ConformalValue {
  Vec8 V = Vec8::Zero();
  double f = 0.0;
};
ConformalValue conformal_on_sphere(const Vec8& y, const s7::SpherePoint& p);

/// V = W + s N along M.
struct RestrictedField {
  Vec8 W = Vec8::Zero();
  double s = 0.0;
  double f = 0.0;
  Vec8 V = Vec8::Zero();
};
RestrictedField restrict_field(const ShapeData& shape, const Vec8& y);

double h_value(const ShapeData& shape, const Vec8& y, const Vec8& y2);
double h_value(const HypersurfaceChart& chart, const Coords& u, const Vec8& y, const Vec8& y2);

/// -G(N,W,W~) - A B(W,W~)^T + f xi W~ - s A xi W~ - f~ xi W + s~ A xi W
Vec8 grad_h(const ShapeData& shape, const Vec8& y, const Vec8& y2);
/// Gradient of h_value by central differences along the frame directions.
Vec8 grad_h_fd(const HypersurfaceChart& chart, const Coords& u, const Vec8& y, const Vec8& y2, double step = 1e-4);

/// FD residuals of  nabla_X W = -f X + s A X,  grad f = W,  grad s = -A W
/// (maximum over the frame directions X).
struct RestrictionResiduals {
  double nabla_w = 0.0;
  double grad_f = 0.0;
  double grad_s = 0.0;
};
RestrictionResiduals restriction_residuals(const HypersurfaceChart& chart, const Coords& u, const Vec8& y,
                                           double step = 1e-4);

struct DivergenceTerm {
  std::string name;      // which vector field
  double closed = 0.0;   // closed-form divergence
  double fd = 0.0;       // finite-difference divergence
  double residual() const;
};

struct DivergenceSuite {
  // f xi W~, f~ xi W, s A xi W~, s~ A xi W, A B(W,W~)^T, G(N,W,W~)
  std::vector<DivergenceTerm> terms;
  double h = 0.0;
  double a2 = 0.0;
  /// Laplacian assembled from the closed-form terms, and -(|A|^2 + 6) h.
  double assembled = 0.0;
  double direct = 0.0;

  double max_residual() const;
};

DivergenceSuite divergence_suite(const HypersurfaceChart& chart, const Coords& u, const Vec8& y, const Vec8& y2,
                                 double step = 1e-4);

/// Throws Degenerate unless y and y2 are nonzero and at least 1e-3 rad from parallel.
void require_independent(const Vec8& y, const Vec8& y2);

struct GridCheck {
  double max_abs = 0.0;       // of the field over interior nodes
  double min_abs = 0.0;
  double max_residual = 0.0;  // of Delta u + lambda u
  double rel_residual = 0.0;
  std::size_t interior_nodes = 0;
};

/// Residual of Delta u + lambda(x) u over interior nodes for a field sampled on the grid.
GridCheck eigen_residual(const HypersurfaceChart& chart, const grid::GridSpec& spec,
                         const std::function<double(const Coords&)>& field,
                         const std::function<double(const Coords&)>& lambda, kernels::Isa isa = kernels::best_isa());

struct EigenReport {
  std::string example;
  int k = 0;
  Vec8 y = Vec8::Zero();
  Vec8 y2 = Vec8::Zero();
  grid::GridSpec grid;
  std::string isa;
  double lambda_expected = 0.0;
  double max_abs_h = 0.0;
  double max_residual = 0.0;
  double rel_residual = 0.0;
  double nonconstancy = 0.0;
  std::size_t interior_nodes = 0;
  /// On the geodesic S^6 only: relative residual of Delta x_1 + 6 x_1.
  bool has_coordinate_check = false;
  double coordinate_rel_residual = 0.0;
};

/// Grid check of Delta h = -(|A|^2 + 6) h for the pair (y, y2).
EigenReport eigencheck_report(const hyper::ExampleSurface& example, const Vec8& y, const Vec8& y2,
                              const grid::GridSpec& spec, kernels::Isa isa = kernels::best_isa());

struct Convergence {
  std::vector<EigenReport> reports;  // one per spacing, in the given order
  std::vector<double> rates;         // between consecutive spacings
  double min_rate() const;
};

Convergence convergence_study(const hyper::ExampleSurface& example, const Vec8& y, const Vec8& y2,
                              const std::vector<double>& deltas, const grid::GridSpec& base,
                              kernels::Isa isa = kernels::best_isa());

/// Default generator pair (e_1, e_2) = ambient coordinates 0 and 1.
Vec8 default_field1();
Vec8 default_field2();

}  // namespace nearlyg2::eigen
