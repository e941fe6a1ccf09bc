#pragma once

// Command implementations behind the nearlyg2 executable. Each command fills
// a JSON report; the executable only parses flags and prints.

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "nearlyg2/octonion.hpp"

namespace nearlyg2::cli {

using Report = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

enum class Format { Json, Table };

struct RunConfig {
  std::string command;
  std::string example = "s6";
  std::optional<int> samples;  // command default when unset
  std::uint64_t seed = 1;
  std::optional<double> step;
  std::string grid;  // "DELTA[:NODES]", empty for the default
  int order = 2;
  std::string field1;  // 8 comma-separated decimals, empty for e_1
  std::string field2;
  std::optional<double> tolerance;
  std::string form_path;  // decompose input
  std::string out;        // empty: stdout
  Format format = Format::Json;
  bool corrupt_phi = false;  // fault injection for verify-identities
};

struct CommandResult {
  int exit_code = 0;  // 0 pass, 1 verification failure, 2 usage/input error
  Report report;
};

CommandResult cmd_verify_identities(const RunConfig& cfg);
CommandResult cmd_torsion(const RunConfig& cfg);
CommandResult cmd_hypersurface(const RunConfig& cfg);
CommandResult cmd_eigencheck(const RunConfig& cfg);
CommandResult cmd_decompose(const RunConfig& cfg);

/// Dispatches on cfg.command; library errors become exit code 2 with an "error" field.
CommandResult run(const RunConfig& cfg);

/// "a,b,c,d,e,f,g,h" -> Vec8; throws Parse.
Vec8 parse_vec8(const std::string& text);
/// "DELTA" or "DELTA:NODES"; throws Parse.
struct GridArg {
  double delta;
  std::optional<int> nodes;
};
GridArg parse_grid(const std::string& text);

Format parse_format(const std::string& text);
std::string render(const Report& report, Format format);

}  // namespace nearlyg2::cli
