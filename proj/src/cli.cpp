#include "nearlyg2/cli.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "nearlyg2/eigencheck.hpp"
#include "nearlyg2/error.hpp"
#include "nearlyg2/form_io.hpp"
#include "nearlyg2/forms.hpp"
#include "nearlyg2/hypersurface.hpp"
#include "nearlyg2/identities.hpp"
#include "nearlyg2/sphere.hpp"

namespace nearlyg2::cli {

namespace {

Report header(const RunConfig& cfg, const std::string& command) {
  Report r;
  r["tool"] = "nearlyg2";
  r["version"] = kVersion;
  r["command"] = command;
  r["seed"] = cfg.seed;
  r["sigma"] = s7::kCrossSign;
  return r;
}

Report vec_json(const Vec8& v) {
  Report a = Report::array();
  for (int i = 0; i < 8; ++i) a.push_back(v[i]);
  return a;
}

Report coords_json(const hyper::Coords& v) {
  Report a = Report::array();
  for (int i = 0; i < 6; ++i) a.push_back(v[i]);
  return a;
}

int samples_or(const RunConfig& cfg, int fallback) {
  const int n = cfg.samples.value_or(fallback);
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "samples must be non-negative");
  return n;
}

double step_or(const RunConfig& cfg, double fallback) {
  const double h = cfg.step.value_or(fallback);
  if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorKind::InvalidArgument, "step must be positive");
  return h;
}

Vec8 random_sphere_point(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec8 v;
  for (int i = 0; i < 8; ++i) v[i] = n(rng);
  return v.normalized();
}

}  // namespace

CommandResult cmd_verify_identities(const RunConfig& cfg) {
  oct::StructureTable table = oct::kPhi0;
  // breaks antisymmetry of a single entry
  if (cfg.corrupt_phi) table[0][1][2] = -table[0][1][2];
  const IdentityReport rep = verify_identities(table);

  CommandResult res;
  res.report = header(cfg, "verify-identities");
  res.report["corrupted_table"] = cfg.corrupt_phi;
  Report checks = Report::array();
  for (const IdentityCheck& c : rep.checks) {
    Report j;
    j["name"] = c.name;
    j["tuples"] = c.tuples;
    j["failures"] = c.failures;
    if (!c.first_failure.empty()) j["first_failure"] = c.first_failure;
    checks.push_back(j);
  }
  res.report["checks"] = checks;
  res.report["pass"] = rep.all_pass();
  res.exit_code = rep.all_pass() ? 0 : 1;
  return res;
}

CommandResult cmd_torsion(const RunConfig& cfg) {
  const int samples = samples_or(cfg, 50);
  const double step = step_or(cfg, 1e-4);
  const double tol = cfg.tolerance.value_or(1e-5);

  std::mt19937_64 rng(cfg.seed);
  double dev_sum = 0.0, dev_max = 0.0, tau0_err = 0.0, t1 = 0.0, t2 = 0.0, t3 = 0.0;
  double tau0_min = 0.0, tau0_max = 0.0;
  for (int s = 0; s < samples; ++s) {
    const s7::SpherePoint p(random_sphere_point(rng), 1e-12);
    const s7::TorsionTensor t = s7::torsion_at(p, step);
    const G2Structure g2 = s7::phi_psi_at(p, t.frame);
    const double dev = (t.t - g2.metric.g).cwiseAbs().maxCoeff();
    dev_sum += dev;
    dev_max = std::max(dev_max, dev);
    const s7::TorsionForms f = s7::torsion_forms(t.t, g2);
    tau0_min = s == 0 ? f.tau0 : std::min(tau0_min, f.tau0);
    tau0_max = s == 0 ? f.tau0 : std::max(tau0_max, f.tau0);
    tau0_err = std::max(tau0_err, std::abs(f.tau0 - s7::kTau0));
    t1 = std::max(t1, f.norm1(g2.metric));
    t2 = std::max(t2, f.norm2(g2.metric));
    t3 = std::max(t3, f.norm3(g2.metric));
  }

  CommandResult res;
  res.report = header(cfg, "torsion");
  res.report["parameters"] = {{"samples", samples}, {"step", step}, {"stencil_order", 2}, {"tolerance", tol}};
  Report body;
  body["samples"] = samples;
  if (samples > 0) {
    body["mean_deviation_from_identity"] = dev_sum / samples;
    body["max_deviation_from_identity"] = dev_max;
    body["tau0_min"] = tau0_min;
    body["tau0_max"] = tau0_max;
    body["max_tau0_error"] = tau0_err;
    body["max_norm_tau1"] = t1;
    body["max_norm_tau2"] = t2;
    body["max_norm_tau3"] = t3;
    const s7::Curvature c = s7::nearly_curvature(s7::kTau0, MetricTensor::identity());
    body["scalar_curvature"] = c.scalar;
    body["ricci_over_metric"] = c.ricci(0, 0);
  }
  res.report["result"] = body;
  const bool pass = tau0_err <= tol && t1 <= tol && t2 <= tol && t3 <= tol;
  res.report["pass"] = pass;
  res.exit_code = pass ? 0 : 1;
  return res;
}

CommandResult cmd_hypersurface(const RunConfig& cfg) {
  const hyper::ExampleSurface ex = hyper::ExampleSurface::parse(cfg.example);
  const int samples = samples_or(cfg, 20);
  const double step = step_or(cfg, 1e-4);
  const double tol = cfg.tolerance.value_or(1e-5);
  const auto chart = ex.chart();

  const std::vector<hyper::Coords> points = hyper::sample_points(chart->domain(), samples, cfg.seed);
  double tr_max = 0.0, a2_min = 0.0, a2_max = 0.0, umb_min = 0.0, umb_max = 0.0, nk_min = 0.0, nk_max = 0.0;
  double cross_max = 0.0, div_max = 0.0, div_fd_max = 0.0, s_min = 0.0, s_max = 0.0;
  for (int i = 0; i < samples; ++i) {
    const hyper::Coords& u = points[static_cast<std::size_t>(i)];
    const hyper::ShapeData sh = hyper::shape_at(*chart, u);
    const std::uint64_t sub = cfg.seed + static_cast<std::uint64_t>(i) + 1;
    const double umb = hyper::umbilic_defect(sh), nk = hyper::nk_defect(sh, 64, sub);
    const double scal = hyper::hyper_curvature(sh).scalar;
    const bool first = i == 0;
    tr_max = std::max(tr_max, std::abs(sh.H));
    a2_min = first ? sh.A2 : std::min(a2_min, sh.A2);
    a2_max = first ? sh.A2 : std::max(a2_max, sh.A2);
    umb_min = first ? umb : std::min(umb_min, umb);
    umb_max = first ? umb : std::max(umb_max, umb);
    nk_min = first ? nk : std::min(nk_min, nk);
    nk_max = first ? nk : std::max(nk_max, nk);
    s_min = first ? scal : std::min(s_min, scal);
    s_max = first ? scal : std::max(s_max, scal);
    cross_max = std::max(cross_max, hyper::sup_cross_defect(sh, 64, sub));
    div_max = std::max(div_max, hyper::div_xi(sh));
    div_fd_max = std::max(div_fd_max, hyper::div_xi_fd(*chart, u, step));
  }

  CommandResult res;
  res.report = header(cfg, "hypersurface");
  res.report["example"] = ex.selector();
  res.report["parameters"] = {{"samples", samples}, {"step", step}, {"tolerance", tol}};
  Report body;
  body["samples"] = samples;
  body["expected_a2"] = ex.expected_a2();
  if (samples > 0) {
    body["max_abs_trace_A"] = tr_max;
    body["a2_min"] = a2_min;
    body["a2_max"] = a2_max;
    body["umbilic_defect_min"] = umb_min;
    body["umbilic_defect_max"] = umb_max;
    body["nk_defect_min"] = nk_min;
    body["nk_defect_max"] = nk_max;
    body["sup_cross_defect"] = cross_max;
    body["div_xi"] = div_max;
    body["div_xi_fd"] = div_fd_max;
    body["scalar_curvature_min"] = s_min;
    body["scalar_curvature_max"] = s_max;
  }
  res.report["result"] = body;
  const bool pass = samples == 0 || (tr_max <= 1e-8 && std::abs(a2_min - ex.expected_a2()) <= 1e-9 &&
                                     std::abs(a2_max - ex.expected_a2()) <= 1e-9 && div_fd_max <= tol);
  res.report["pass"] = pass;
  res.exit_code = pass ? 0 : 1;
  return res;
}

CommandResult cmd_eigencheck(const RunConfig& cfg) {
  const hyper::ExampleSurface ex = hyper::ExampleSurface::parse(cfg.example);
  const Vec8 y = cfg.field1.empty() ? eigen::default_field1() : parse_vec8(cfg.field1);
  const Vec8 y2 = cfg.field2.empty() ? eigen::default_field2() : parse_vec8(cfg.field2);

  grid::GridSpec spec;
  spec.order = cfg.order;
  if (spec.order != 2 && spec.order != 4) throw Error(ErrorKind::InvalidArgument, "stencil order must be 2 or 4");
  spec.nodes = grid::default_nodes(spec.order);
  if (!cfg.grid.empty()) {
    const GridArg g = parse_grid(cfg.grid);
    spec.delta = g.delta;
    if (g.nodes) spec.nodes = *g.nodes;
  }
  spec.center = ex.chart()->default_center();
  const bool geodesic = ex.kind == hyper::ExampleKind::GeodesicS6;
  const double tol = cfg.tolerance.value_or(geodesic ? 1e-3 : 1e-2);

  const eigen::EigenReport rep = eigen::eigencheck_report(ex, y, y2, spec);

  CommandResult res;
  res.report = header(cfg, "eigencheck");
  res.report["example"] = rep.example;
  res.report["k"] = rep.k;
  res.report["Y"] = vec_json(rep.y);
  res.report["Y_tilde"] = vec_json(rep.y2);
  const hyper::Box box = spec.box();
  res.report["grid"] = {{"box", {{"lo", coords_json(box.lo)}, {"hi", coords_json(box.hi)}}},
                        {"delta", spec.delta},
                        {"nodes", spec.nodes},
                        {"order", spec.order}};
  res.report["parameters"] = {{"tolerance", tol}};
  res.report["lambda_expected"] = rep.lambda_expected;
  res.report["max_abs_h"] = rep.max_abs_h;
  res.report["max_residual"] = rep.max_residual;
  res.report["rel_residual"] = rep.rel_residual;
  res.report["nonconstancy"] = rep.nonconstancy;
  res.report["interior_nodes"] = rep.interior_nodes;
  bool pass = rep.rel_residual <= tol;
  if (rep.has_coordinate_check) {
    res.report["coordinate_eigenvalue"] = 6.0;
    res.report["coordinate_rel_residual"] = rep.coordinate_rel_residual;
    pass = pass && rep.coordinate_rel_residual <= tol;
  }
  res.report["pass"] = pass;
  res.exit_code = pass ? 0 : 1;
  return res;
}

CommandResult cmd_decompose(const RunConfig& cfg) {
  if (cfg.form_path.empty()) throw Error(ErrorKind::InvalidArgument, "decompose needs --form FILE");
  const AltForm form = read_form_file(cfg.form_path);
  const G2Structure s = G2Structure::from_phi(AltForm::phi0());
  const double tol = cfg.tolerance.value_or(1e-10);

  CommandResult res;
  res.report = header(cfg, "decompose");
  res.report["degree"] = form.degree();
  Report parts = Report::array();
  AltForm sum(form.degree());
  auto add = [&](int label, const AltForm& part) {
    parts.push_back({{"type", label}, {"norm", std::sqrt(std::max(0.0, inner(part, part, s.metric)))}});
    sum += part;
  };
  switch (form.degree()) {
    case 2: {
      const Split2 sp = project2(form, s);
      add(7, sp.part7);
      add(14, sp.part14);
      break;
    }
    case 3: {
      const Split3 sp = project3(form, s);
      add(1, sp.part1);
      add(7, sp.part7);
      add(27, sp.part27);
      break;
    }
    case 4:
    case 5: {
      const HighSplit sp = decompose_high(form, s);
      for (std::size_t i = 0; i < sp.parts.size(); ++i) add(sp.labels[i], sp.parts[i]);
      break;
    }
    default:
      // degrees 0, 1, 6, 7 are irreducible
      add(form.degree() == 0 || form.degree() == 7 ? 1 : 7, form);
  }
  const double recon = (sum - form).max_abs();
  res.report["parts"] = parts;
  res.report["reconstruction_error"] = recon;
  res.report["pass"] = recon <= tol;
  res.exit_code = recon <= tol ? 0 : 1;
  return res;
}

CommandResult run(const RunConfig& cfg) {
  try {
    if (cfg.command == "verify-identities") return cmd_verify_identities(cfg);
    if (cfg.command == "torsion") return cmd_torsion(cfg);
    if (cfg.command == "hypersurface") return cmd_hypersurface(cfg);
    if (cfg.command == "eigencheck") return cmd_eigencheck(cfg);
    if (cfg.command == "decompose") return cmd_decompose(cfg);
    throw Error(ErrorKind::InvalidArgument, "unknown command '" + cfg.command + "'");
  } catch (const Error& e) {
    CommandResult res;
    res.exit_code = 2;
    res.report = header(cfg, cfg.command);
    res.report["error"] = e.what();
    return res;
  }
}

Vec8 parse_vec8(const std::string& text) {
  Vec8 v;
  std::stringstream ss(text);
  std::string item;
  int n = 0;
  while (std::getline(ss, item, ',')) {
    if (n == 8) throw Error(ErrorKind::Parse, "field needs exactly 8 comma-separated values: " + text);
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "not a number in field: '" + item + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos || !std::isfinite(x))
      throw Error(ErrorKind::Parse, "not a number in field: '" + item + "'");
    v[n++] = x;
  }
  if (n != 8) throw Error(ErrorKind::Parse, "field needs exactly 8 comma-separated values: " + text);
  return v;
}

GridArg parse_grid(const std::string& text) {
  GridArg g{0.0, std::nullopt};
  const std::size_t colon = text.find(':');
  const std::string d = text.substr(0, colon);
  try {
    std::size_t used = 0;
    g.delta = std::stod(d, &used);
    if (used != d.size()) throw std::invalid_argument(d);
    if (colon != std::string::npos) {
      const std::string n = text.substr(colon + 1);
      const int nodes = std::stoi(n, &used);
      if (used != n.size()) throw std::invalid_argument(n);
      g.nodes = nodes;
    }
  } catch (const std::exception&) {
    throw Error(ErrorKind::Parse, "grid must look like DELTA or DELTA:NODES, got '" + text + "'");
  }
  if (!(g.delta > 0.0) || !std::isfinite(g.delta)) throw Error(ErrorKind::Parse, "grid spacing must be positive");
  return g;
}

Format parse_format(const std::string& text) {
  if (text == "json") return Format::Json;
  if (text == "table") return Format::Table;
  throw Error(ErrorKind::Parse, "format must be json or table");
}

namespace {
void flatten(const Report& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
  } else if (j.is_array() && !j.empty() && (j[0].is_object() || j[0].is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
  } else if (j.is_string()) {
    rows.emplace_back(prefix, j.get<std::string>());
  } else {
    rows.emplace_back(prefix, j.dump());
  }
}
}  // namespace

std::string render(const Report& report, Format format) {
  if (format == Format::Json) return report.dump(2) + "\n";
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.first.size());
  std::string out;
  for (const auto& [k, v] : rows) out += k + std::string(width - k.size() + 2, ' ') + v + "\n";
  return out;
}

}  // namespace nearlyg2::cli
