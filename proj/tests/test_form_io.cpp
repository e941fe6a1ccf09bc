#include <doctest.h>

#include <cstdio>
#include <random>
#include <string>

#include "nearlyg2/error.hpp"
#include "nearlyg2/form_io.hpp"

using namespace nearlyg2;

namespace {

ErrorKind kind_of(const std::string& text) {
  try {
    parse_form(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected a parse error for: " << text);
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("format and parse round trip") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n;
  for (int k = 0; k <= 7; ++k) {
    AltForm a(k);
    for (int i = 0; i < a.size(); ++i) a[i] = (i % 3 == 0) ? 0.0 : n(rng);
    const AltForm b = parse_form(format_form(a));
    REQUIRE(b.degree() == k);
    for (int i = 0; i < a.size(); ++i) CHECK(b[i] == a[i]);
  }
}

TEST_CASE("phi0 document") {
  const AltForm phi = parse_form(format_form(AltForm::phi0()));
  CHECK((phi - AltForm::phi0()).max_abs() == 0.0);
  const AltForm e = parse_form(R"({"degree": 2, "dim": 7, "components": [{"indices": [1, 2], "value": 1.5}]})");
  CHECK(e[0] == 1.5);
  for (int i = 1; i < e.size(); ++i) CHECK(e[i] == 0.0);
}

TEST_CASE("malformed documents") {
  CHECK(kind_of("not json") == ErrorKind::Parse);
  CHECK(kind_of(R"({"degree": 2, "dim": 6, "components": []})") == ErrorKind::Parse);
  CHECK(kind_of(R"({"degree": 9, "dim": 7, "components": []})") == ErrorKind::Parse);
  CHECK(kind_of(R"({"degree": 2, "dim": 7, "components": [{"indices": [2, 1], "value": 1}]})") == ErrorKind::Parse);
  CHECK(kind_of(R"({"degree": 2, "dim": 7, "components": [{"indices": [1, 8], "value": 1}]})") == ErrorKind::Parse);
  CHECK(kind_of(R"({"degree": 2, "dim": 7, "components": [{"indices": [1], "value": 1}]})") == ErrorKind::Parse);
  CHECK(kind_of(R"({"degree": 2, "dim": 7, "components": [{"indices": [1, 2], "value": 1},
                   {"indices": [1, 2], "value": 2}]})") == ErrorKind::Parse);
  CHECK(kind_of(R"({"degree": 2, "dim": 7, "components": [{"indices": [1, 2]}]})") == ErrorKind::Parse);
  CHECK(kind_of(R"({"dim": 7, "components": []})") == ErrorKind::Parse);
}

TEST_CASE("files") {
  const std::string path = "test_form_io_tmp.json";
  write_form_file(path, AltForm::phi0());
  CHECK((read_form_file(path) - AltForm::phi0()).max_abs() == 0.0);
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_form_file("/nonexistent/form.json"), Error);
}
