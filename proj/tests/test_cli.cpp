#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "nearlyg2/cli.hpp"
#include "nearlyg2/error.hpp"
#include "nearlyg2/form_io.hpp"

using namespace nearlyg2;
using namespace nearlyg2::cli;

namespace {

RunConfig config(const std::string& command) {
  RunConfig c;
  c.command = command;
  return c;
}

}  // namespace

TEST_CASE("verify-identities passes and reports every sweep") {
  const CommandResult r = run(config("verify-identities"));
  CHECK(r.exit_code == 0);
  CHECK(r.report["pass"] == true);
  CHECK(r.report["tool"] == "nearlyg2");
  CHECK(r.report["sigma"] == -1);
  bool saw_2401 = false;
  for (const auto& c : r.report["checks"]) {
    CHECK(c["failures"] == 0);
    if (c["tuples"] == 2401) saw_2401 = true;
  }
  CHECK(saw_2401);
}

TEST_CASE("fault injection names the first failing tuple") {
  RunConfig c = config("verify-identities");
  c.corrupt_phi = true;
  const CommandResult r = run(c);
  CHECK(r.exit_code == 1);
  CHECK(r.report["pass"] == false);
  bool named = false;
  for (const auto& chk : r.report["checks"])
    if (chk.contains("first_failure") && chk["first_failure"] == "(1,2,3)") named = true;
  CHECK(named);
}

TEST_CASE("reports are deterministic") {
  for (const char* cmd : {"torsion", "hypersurface"}) {
    RunConfig c = config(cmd);
    c.samples = 5;
    c.seed = 7;
    c.example = "clifford:2";
    const std::string a = render(run(c).report, Format::Json);
    const std::string b = render(run(c).report, Format::Json);
    CHECK(a == b);
    c.seed = 8;
    CHECK(render(run(c).report, Format::Json) != a);
  }
}

TEST_CASE("torsion report") {
  RunConfig c = config("torsion");
  c.samples = 10;
  const CommandResult r = run(c);
  CHECK(r.exit_code == 0);
  const auto& b = r.report["result"];
  CHECK(b["max_deviation_from_identity"].get<double>() <= 1e-5);
  CHECK(b["scalar_curvature"].get<double>() == doctest::Approx(42.0));
  CHECK(b["ricci_over_metric"].get<double>() == doctest::Approx(6.0));

  c.samples = 0;
  const CommandResult empty = run(c);
  CHECK(empty.exit_code == 0);
  CHECK(empty.report["result"]["samples"] == 0);

  c.samples = -1;
  CHECK(run(c).exit_code == 2);
  c.samples = 3;
  c.step = 0.0;
  CHECK(run(c).exit_code == 2);
}

TEST_CASE("hypersurface report") {
  for (const char* sel : {"s6", "clifford:1", "clifford:5"}) {
    RunConfig c = config("hypersurface");
    c.example = sel;
    c.samples = 4;
    const CommandResult r = run(c);
    CHECK(r.exit_code == 0);
    const auto& b = r.report["result"];
    CHECK(b["a2_max"].get<double>() == doctest::Approx(b["expected_a2"].get<double>()));
    CHECK(b["div_xi_fd"].get<double>() <= 1e-5);
  }
  RunConfig c = config("hypersurface");
  c.example = "clifford:7";
  const CommandResult bad = run(c);
  CHECK(bad.exit_code == 2);
  CHECK(bad.report["error"].get<std::string>().find("k out of range") != std::string::npos);
}

TEST_CASE("eigencheck report") {
  RunConfig c = config("eigencheck");
  c.example = "clifford:3";
  c.grid = "1e-2";
  const CommandResult r = run(c);
  CHECK(r.exit_code == 0);
  CHECK(r.report["lambda_expected"].get<double>() == doctest::Approx(12.0));
  CHECK(r.report["grid"]["nodes"] == 5);
  CHECK(r.report["nonconstancy"].get<double>() > 0.0);

  c.field1 = "1,0,0,0,0,0,0,0";
  c.field2 = "2,0,0,0,0,0,0,0";
  const CommandResult degenerate = run(c);
  CHECK(degenerate.exit_code == 2);
  CHECK(degenerate.report["error"].get<std::string>().find("choose independent generators") != std::string::npos);

  c = config("eigencheck");
  c.order = 3;
  CHECK(run(c).exit_code == 2);
  c.order = 2;
  c.grid = "0.5:11";
  CHECK(run(c).exit_code == 2);
  c.grid = "5e-3";
  c.tolerance = 1e-12;
  CHECK(run(c).exit_code == 1);
}

TEST_CASE("decompose") {
  const std::filesystem::path path = std::filesystem::temp_directory_path() / "nearlyg2_test_form.json";
  AltForm f = AltForm::phi0() + AltForm::basis({0, 1, 3}, 0.5);
  write_form_file(path.string(), f);
  RunConfig c = config("decompose");
  c.form_path = path.string();
  const CommandResult r = run(c);
  CHECK(r.exit_code == 0);
  CHECK(r.report["degree"] == 3);
  CHECK(r.report["parts"].size() == 3);
  CHECK(r.report["reconstruction_error"].get<double>() <= 1e-12);
  std::filesystem::remove(path);

  c.form_path = "/nonexistent/form.json";
  CHECK(run(c).exit_code == 2);
  CHECK(run(config("decompose")).exit_code == 2);
  CHECK(run(config("nonsense")).exit_code == 2);
}

TEST_CASE("argument parsers") {
  const Vec8 v = parse_vec8("1, 2,3,4,5,6,7,-8.5");
  CHECK(v[7] == -8.5);
  CHECK_THROWS_AS(parse_vec8("1,2,3"), Error);
  CHECK_THROWS_AS(parse_vec8("1,2,3,4,5,6,7,8,9"), Error);
  CHECK_THROWS_AS(parse_vec8("1,2,3,4,5,6,7,x"), Error);

  const GridArg g = parse_grid("2e-2:7");
  CHECK(g.delta == 2e-2);
  CHECK(g.nodes == 7);
  CHECK_FALSE(parse_grid("0.01").nodes.has_value());
  CHECK_THROWS_AS(parse_grid("-1"), Error);
  CHECK_THROWS_AS(parse_grid("0.01:"), Error);
  CHECK_THROWS_AS(parse_grid("abc"), Error);

  CHECK(parse_format("table") == Format::Table);
  CHECK_THROWS_AS(parse_format("xml"), Error);
}

TEST_CASE("table rendering") {
  const std::string t = render(run(config("verify-identities")).report, Format::Table);
  CHECK(t.find("tool") != std::string::npos);
  CHECK(t.find("nearlyg2") != std::string::npos);
  CHECK(t.find('{') == std::string::npos);
}
