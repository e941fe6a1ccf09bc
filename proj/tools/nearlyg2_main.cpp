#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "nearlyg2/cli.hpp"
#include "nearlyg2/error.hpp"

namespace {

void add_common(CLI::App* sub, nearlyg2::cli::RunConfig& cfg, std::string& format) {
  sub->add_option("--seed", cfg.seed, "RNG seed");
  sub->add_option("--out", cfg.out, "write the report here instead of stdout");
  sub->add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}));
  sub->add_option("--tolerance", cfg.tolerance, "override the pass threshold");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace nearlyg2::cli;
  RunConfig cfg;
  std::string format = "json";

  CLI::App app{"Numerical checks for the nearly G2 sphere S^7 and its hypersurfaces"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  auto* ident = app.add_subcommand("verify-identities", "exact cross product and contraction identities");
  add_common(ident, cfg, format);
  ident->add_flag("--corrupt-phi", cfg.corrupt_phi)->group("");

  auto* tors = app.add_subcommand("torsion", "torsion of the round structure at random points");
  add_common(tors, cfg, format);
  tors->add_option("--samples", cfg.samples);
  tors->add_option("--step", cfg.step, "finite difference step");

  auto* hyp = app.add_subcommand("hypersurface", "shape operator and xi defects on an example");
  add_common(hyp, cfg, format);
  hyp->add_option("--example", cfg.example, "s6 or clifford:k");
  hyp->add_option("--samples", cfg.samples);
  hyp->add_option("--step", cfg.step, "finite difference step for div xi");

  auto* eig = app.add_subcommand("eigencheck", "grid check of the Laplacian of h");
  add_common(eig, cfg, format);
  eig->add_option("--example", cfg.example, "s6 or clifford:k");
  eig->add_option("--grid", cfg.grid, "DELTA[:NODES]");
  eig->add_option("--order", cfg.order, "stencil order 2 or 4");
  eig->add_option("--field1", cfg.field1, "8 comma-separated values");
  eig->add_option("--field2", cfg.field2, "8 comma-separated values");

  auto* dec = app.add_subcommand("decompose", "type decomposition of a form file under phi0");
  add_common(dec, cfg, format);
  dec->add_option("--form", cfg.form_path, "form file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  cfg.format = parse_format(format);

  const CommandResult res = run(cfg);
  if (res.report.contains("error")) std::cerr << "error: " << res.report["error"].get<std::string>() << "\n";
  if (res.report.contains("checks"))
    for (const auto& c : res.report["checks"])
      if (c.contains("first_failure"))
        std::cerr << "failed " << c["name"].get<std::string>() << " at " << c["first_failure"].get<std::string>()
                  << "\n";

  const std::string text = render(res.report, cfg.format);
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(cfg.out);
    if (!(f << text)) {
      std::cerr << "error: cannot write " << cfg.out << "\n";
      return 2;
    }
  }
  return res.exit_code;
}
