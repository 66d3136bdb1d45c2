#pragma once

#include "specgraph/nonnormal.hpp"
#include "specgraph/profile.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace specgraph {

/// Flat key=value run configuration. Keys use the CLI flag names with `_`
/// in place of `-`; `#` starts a comment.
struct RunConfig {
  std::string command;
  std::string profile = "builtin:couette";
  std::optional<double> alpha;
  std::optional<double> reynolds;
  std::optional<double> epsilon;
  int n = 200;
  double delta = 0.05;
  double im_cutoff = 0.0; // 0 -> 2(b - a)
  double trace_tol = 1e-10;
  double newton_tol = 1e-12;
  double filter_tol = 1e-2;
  std::string out = "out";

  std::string which = "model";     // spectrum: model | os
  bool with_os = false;            // compare
  double c = 10.0;                 // compare: circle radius C ε²
  std::optional<cplx> lambda;      // growth probe; default (a+b)/2 - 0.1 i (b-a)
  std::vector<double> eps_list;    // growth; default 1/20, 1/25, 1/30, 1/40, 1/50
  std::string target = "resolvent"; // growth: resolvent | riesz
  std::string norm = "L2";         // L2 | Sobolev
  std::string builder = "model";   // pseudo/growth: model | model_self_adjoint | os
  std::optional<Rect> rect;        // pseudo; default bounding box of Ω
  int nx = 41;
  int ny = 21;
  int quad = 64;
  double m_factor = 0.5;
};

/// Sets one key; throws ConfigError for unknown keys or malformed values.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

/// Parses the flat file format into `cfg` (later keys override earlier ones).
void apply_config_text(RunConfig& cfg, std::string_view text);
void apply_config_file(RunConfig& cfg, const std::string& path);

/// Every key in a fixed order, one `key=value` per line.
std::string canonical_config(const RunConfig& cfg);
std::string config_hash(const RunConfig& cfg);

/// Checks the invariants for cfg.command and returns the parsed profile.
/// Throws ConfigError.
Profile validate_config(const RunConfig& cfg);

/// ε given directly or derived from ε² = 1/(αR); throws ConfigError if neither.
double resolved_epsilon(const RunConfig& cfg);
/// R given directly or derived from ε; requires α.
double resolved_reynolds(const RunConfig& cfg);

NormKind parse_norm(std::string_view s);
Builder parse_builder(std::string_view s);

} // namespace specgraph
