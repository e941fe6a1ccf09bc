#include "nearlyg2/eigencheck.hpp"

#include <algorithm>
#include <cmath>

#include "nearlyg2/error.hpp"

namespace nearlyg2::eigen {

namespace {

void check_step(double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw Error(ErrorKind::InvalidArgument, "step must be positive");
}

Coords shifted(const ShapeData& s, int a, double t) { return s.u + t * s.to_frame.col(a); }

// The six vector fields whose divergences add up to Delta h, at one point.
std::array<Vec8, 6> divergence_fields(const ShapeData& s, const Vec8& y, const Vec8& y2) {
  const RestrictedField r = restrict_field(s, y), r2 = restrict_field(s, y2);
  const Vec8& p = s.p.vec();
  const Vec8 xi_w = s7::cross_at(p, s.normal, r.W), xi_w2 = s7::cross_at(p, s.normal, r2.W);
  return {
      r.f * xi_w2,
      r2.f * xi_w,
      r.s * s.apply_A(xi_w2),
      r2.s * s.apply_A(xi_w),
      s.apply_A(s.project_tangent(hyper::B_at(p, r.W, r2.W))),
      hyper::G_at(s.p, s.normal, r.W, r2.W),
  };
}

}  // namespace

ConformalValue conformal_on_sphere(const Vec8& y, const s7::SpherePoint& p) {
  ConformalValue c;
  c.f = y.dot(p.vec());
  c.V = y - c.f * p.vec();
  return c;
}

RestrictedField restrict_field(const ShapeData& shape, const Vec8& y) {
  const ConformalValue c = conformal_on_sphere(y, shape.p);
  RestrictedField r;
  r.f = c.f;
  r.V = c.V;
  r.s = c.V.dot(shape.normal);
  r.W = c.V - r.s * shape.normal;
  return r;
}

double h_value(const ShapeData& shape, const Vec8& y, const Vec8& y2) {
  const Vec8 w = restrict_field(shape, y).W, w2 = restrict_field(shape, y2).W;
  return s7::cross_at(shape.p.vec(), shape.normal, w).dot(w2);
}

double h_value(const HypersurfaceChart& chart, const Coords& u, const Vec8& y, const Vec8& y2) {
  return h_value(hyper::shape_at(chart, u), y, y2);
}

Vec8 grad_h(const ShapeData& shape, const Vec8& y, const Vec8& y2) {
  const RestrictedField r = restrict_field(shape, y), r2 = restrict_field(shape, y2);
  const Vec8& p = shape.p.vec();
  const Vec8 xi_w = s7::cross_at(p, shape.normal, r.W), xi_w2 = s7::cross_at(p, shape.normal, r2.W);
  return -hyper::G_at(shape.p, shape.normal, r.W, r2.W) -
         shape.apply_A(shape.project_tangent(hyper::B_at(p, r.W, r2.W))) + r.f * xi_w2 -
         r.s * shape.apply_A(xi_w2) - r2.f * xi_w + r2.s * shape.apply_A(xi_w);
}

Vec8 grad_h_fd(const HypersurfaceChart& chart, const Coords& u, const Vec8& y, const Vec8& y2, double step) {
  check_step(step);
  const ShapeData s = hyper::shape_at(chart, u);
  Vec8 g = Vec8::Zero();
  for (int a = 0; a < 6; ++a) {
    const double d = (h_value(chart, shifted(s, a, step), y, y2) - h_value(chart, shifted(s, a, -step), y, y2)) /
                     (2.0 * step);
    g += d * s.frame[static_cast<std::size_t>(a)];
  }
  return g;
}

RestrictionResiduals restriction_residuals(const HypersurfaceChart& chart, const Coords& u, const Vec8& y,
                                           double step) {
  check_step(step);
  const ShapeData s = hyper::shape_at(chart, u);
  const RestrictedField r = restrict_field(s, y);
  RestrictionResiduals out;
  for (int a = 0; a < 6; ++a) {
    const Vec8& x = s.frame[static_cast<std::size_t>(a)];
    const RestrictedField up = restrict_field(hyper::shape_at(chart, shifted(s, a, step)), y);
    const RestrictedField dn = restrict_field(hyper::shape_at(chart, shifted(s, a, -step)), y);
    const Vec8 dw = s.project_tangent((up.W - dn.W) / (2.0 * step));
    const double df = (up.f - dn.f) / (2.0 * step), ds = (up.s - dn.s) / (2.0 * step);
    out.nabla_w = std::max(out.nabla_w, (dw - (-r.f * x + r.s * s.apply_A(x))).norm());
    out.grad_f = std::max(out.grad_f, std::abs(df - r.W.dot(x)));
    out.grad_s = std::max(out.grad_s, std::abs(ds + s.apply_A(r.W).dot(x)));
  }
  return out;
}

double DivergenceTerm::residual() const { return std::abs(closed - fd); }

double DivergenceSuite::max_residual() const {
  double m = 0.0;
  for (const DivergenceTerm& t : terms) m = std::max(m, t.residual());
  return m;
}

DivergenceSuite divergence_suite(const HypersurfaceChart& chart, const Coords& u, const Vec8& y, const Vec8& y2,
                                 double step) {
  check_step(step);
  const ShapeData s = hyper::shape_at(chart, u);
  const RestrictedField r = restrict_field(s, y), r2 = restrict_field(s, y2);
  const Vec8& p = s.p.vec();
  const Vec8 xi_w = s7::cross_at(p, s.normal, r.W), xi_w2 = s7::cross_at(p, s.normal, r2.W);
  const double h = xi_w.dot(r2.W);
  const double aw_axiw2 = s.apply_A(r.W).dot(s.apply_A(xi_w2));
  const double aw2_axiw = s.apply_A(r2.W).dot(s.apply_A(xi_w));

  DivergenceSuite suite;
  suite.h = h;
  suite.a2 = s.A2;
  suite.terms = {
      {"f_xi_w2", -h, 0.0},
      {"f2_xi_w", h, 0.0},
      {"s_A_xi_w2", -aw_axiw2, 0.0},
      {"s2_A_xi_w", -aw2_axiw, 0.0},
      {"A_B_w_w2_tangential", s.A2 * h + aw_axiw2 - aw2_axiw, 0.0},
      {"G_n_w_w2", s7::kTau0 * s7::kTau0 / 4.0 * h, 0.0},
  };
  for (int a = 0; a < 6; ++a) {
    const Vec8& ea = s.frame[static_cast<std::size_t>(a)];
    const auto up = divergence_fields(hyper::shape_at(chart, shifted(s, a, step)), y, y2);
    const auto dn = divergence_fields(hyper::shape_at(chart, shifted(s, a, -step)), y, y2);
    for (std::size_t t = 0; t < 6; ++t) suite.terms[t].fd += ((up[t] - dn[t]) / (2.0 * step)).dot(ea);
  }
  const auto& c = suite.terms;
  suite.assembled = -c[5].closed - c[4].closed + c[0].closed - c[2].closed - c[1].closed + c[3].closed;
  suite.direct = -(s.A2 + 6.0) * h;
  return suite;
}

void require_independent(const Vec8& y, const Vec8& y2) {
  const double ny = y.norm(), ny2 = y2.norm();
  if (!(ny > 0.0) || !(ny2 > 0.0))
    throw Error(ErrorKind::Degenerate, "degenerate field pair, choose independent generators (zero generator)");
  const Vec8 a = y / ny, b = y2 / ny2;
  const double angle = 2.0 * std::atan2((a - b).norm(), (a + b).norm());
  if (std::min(angle, M_PI - angle) < 1e-3)
    throw Error(ErrorKind::Degenerate, "degenerate field pair, choose independent generators");
}

GridCheck eigen_residual(const HypersurfaceChart& chart, const grid::GridSpec& spec,
                         const std::function<double(const Coords&)>& field,
                         const std::function<double(const Coords&)>& lambda, kernels::Isa isa) {
  const grid::GridField values = grid::sample(spec, field);
  const grid::GridField lap = grid::laplace_beltrami(chart, values, isa);
  GridCheck out;
  out.min_abs = std::numeric_limits<double>::infinity();
  for (std::size_t i : values.interior_nodes()) {
    const double v = values[i];
    out.max_abs = std::max(out.max_abs, std::abs(v));
    out.min_abs = std::min(out.min_abs, std::abs(v));
    out.max_residual = std::max(out.max_residual, std::abs(lap[i] + lambda(values.node(i)) * v));
    ++out.interior_nodes;
  }
  out.rel_residual = out.max_abs > 0.0 ? out.max_residual / out.max_abs : out.max_residual;
  return out;
}

EigenReport eigencheck_report(const hyper::ExampleSurface& example, const Vec8& y, const Vec8& y2,
                              const grid::GridSpec& spec, kernels::Isa isa) {
  require_independent(y, y2);
  spec.validate();
  const auto chart = example.chart();
  const ShapeData center = hyper::shape_at(*chart, spec.center);
  if (std::abs(center.H) > 1e-8) throw Error(ErrorKind::RequiresMinimal, "eigencheck requires a minimal hypersurface");

  EigenReport rep;
  rep.example = example.selector();
  rep.k = example.k;
  rep.y = y;
  rep.y2 = y2;
  rep.grid = spec;
  rep.isa = kernels::isa_name(isa);
  rep.lambda_expected = center.A2 + 6.0;

  const GridCheck check = eigen_residual(
      *chart, spec, [&](const Coords& u) { return h_value(*chart, u, y, y2); },
      [&](const Coords& u) { return hyper::shape_at(*chart, u).A2 + 6.0; }, isa);
  if (check.max_abs <= 1e-12 * y.norm() * y2.norm())
    throw Error(ErrorKind::Degenerate, "degenerate field pair, choose independent generators (h vanishes on the grid)");
  rep.max_abs_h = check.max_abs;
  rep.max_residual = check.max_residual;
  rep.rel_residual = check.rel_residual;
  rep.nonconstancy = check.max_abs - check.min_abs;
  rep.interior_nodes = check.interior_nodes;

  if (example.kind == hyper::ExampleKind::GeodesicS6) {
    const GridCheck coord = eigen_residual(
        *chart, spec, [&](const Coords& u) { return chart->immerse(u)[0]; }, [](const Coords&) { return 6.0; }, isa);
    rep.has_coordinate_check = true;
    rep.coordinate_rel_residual = coord.rel_residual;
  }
  return rep;
}

double Convergence::min_rate() const {
  double m = std::numeric_limits<double>::infinity();
  for (double r : rates) m = std::min(m, r);
  return m;
}

Convergence convergence_study(const hyper::ExampleSurface& example, const Vec8& y, const Vec8& y2,
                              const std::vector<double>& deltas, const grid::GridSpec& base, kernels::Isa isa) {
  if (deltas.size() < 2) throw Error(ErrorKind::InvalidArgument, "convergence study needs at least two spacings");
  Convergence c;
  for (double d : deltas) {
    grid::GridSpec spec = base;
    spec.delta = d;
    c.reports.push_back(eigencheck_report(example, y, y2, spec, isa));
  }
  for (std::size_t i = 0; i + 1 < deltas.size(); ++i)
    c.rates.push_back(std::log(c.reports[i].max_residual / c.reports[i + 1].max_residual) /
                      std::log(deltas[i] / deltas[i + 1]));
  return c;
}

Vec8 default_field1() { return Vec8::Unit(0); }
Vec8 default_field2() { return Vec8::Unit(1); }

}  // namespace nearlyg2::eigen
