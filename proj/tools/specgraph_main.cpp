// specgraph command-line entry point.

#include "specgraph/commands.hpp"
#include "specgraph/config.hpp"
#include "specgraph/errors.hpp"
#include "specgraph/io.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace {

using specgraph::RunConfig;

struct Flags {
  std::string config_file;
  std::map<std::string, std::string> values; // key -> raw value, applied after the config file
  std::vector<std::string> sets;             // --set key=value
  bool with_os = false;
};

void add_flag(CLI::App* app, Flags& f, const std::string& name, const std::string& key, const std::string& help) {
  app->add_option_function<std::string>(
      name, [&f, key](const std::string& v) { f.values[key] = v; }, help);
}

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config_file, "flat key=value config file (flags override it)");
  add_flag(app, f, "--profile", "profile", "builtin:couette | builtin:cubic:c | builtin:shifted2:s | poly:c0,c1,...");
  add_flag(app, f, "--alpha", "alpha", "wavenumber α (Orr–Sommerfeld)");
  auto* re = app->add_option_function<std::string>(
      "--reynolds", [&f](const std::string& v) { f.values["reynolds"] = v; }, "Reynolds number R");
  auto* ep = app->add_option_function<std::string>(
      "--epsilon", [&f](const std::string& v) { f.values["epsilon"] = v; }, "small parameter ε, ε² = 1/(αR)");
  re->excludes(ep);
  add_flag(app, f, "--n", "n", "collocation resolution (trust check uses 2n)");
  add_flag(app, f, "--delta", "delta", "trim radius around a, b, λ0");
  add_flag(app, f, "--im-cutoff", "im_cutoff", "depth of the computational window (0: 2(b-a))");
  add_flag(app, f, "--trace-tol", "trace_tol", "curve tracing tolerance on |Re F|");
  add_flag(app, f, "--newton-tol", "newton_tol", "Newton tolerance");
  add_flag(app, f, "--filter-tol", "filter_tol", "two-resolution trust tolerance");
  add_flag(app, f, "--quad", "quad", "Gauss–Legendre nodes per action segment");
  add_flag(app, f, "--out", "out", "output directory");
  app->add_option("--set", f.sets, "extra key=value override")->take_all();
}

// Failures before a RunConfig exists (bad flags, unreadable config file).
int early_error(const std::string& out, const std::string& command, const std::string& op,
                const std::string& message, int argc, char** argv) {
  std::cerr << "specgraph " << command << ": ConfigError: " << message << "\n";
  specgraph::Metadata meta;
  meta.command = command;
  specgraph::json j;
  j["meta"] = specgraph::meta_json(meta);
  j["error"] = {{"kind", "ConfigError"}, {"module", "cli"}, {"operation", op}, {"message", message}};
  j["parameters"] = {{"argv", std::vector<std::string>(argv + 1, argv + argc)}};
  try {
    specgraph::write_atomic(std::filesystem::path(out) / "error.json", j.dump(2) + "\n");
  } catch (const std::exception&) {
    // nowhere to report; the exit code still says what happened
  }
  return specgraph::kExitConfig;
}

std::string guess_out(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--out") return argv[i + 1];
  return "out";
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Limit spectral graphs, WKB eigenvalues and non-normal growth for the model and "
               "Orr–Sommerfeld problems"};
  app.set_version_flag("--version", SPECGRAPH_VERSION);
  app.require_subcommand(1);
  Flags f;

  auto* graph = app.add_subcommand("graph", "trace Γ and write graph.csv / graph.json");
  auto* spectrum = app.add_subcommand("spectrum", "discretized spectrum at n and 2n with trust flags");
  auto* wkb = app.add_subcommand("wkb", "quantization-condition eigenvalues on Γ");
  auto* compare = app.add_subcommand("compare", "WKB vs discretized spectra (and model vs Orr–Sommerfeld)");
  auto* pseudo = app.add_subcommand("pseudo", "resolvent-norm grid");
  auto* growth = app.add_subcommand("growth", "ε-sweep of resolvent norm or Riesz constant");
  auto* validate = app.add_subcommand("validate", "partial AM-class check of a profile");
  for (auto* s : {graph, spectrum, wkb, compare, pseudo, growth, validate}) add_common(s, f);

  add_flag(spectrum, f, "--which", "which", "model | os");
  compare->add_flag("--with-os", f.with_os, "also compare against the Orr–Sommerfeld spectrum");
  add_flag(compare, f, "--c", "c", "localization constant C (radius Cε²)");
  for (auto* s : {pseudo, growth}) {
    add_flag(s, f, "--builder", "builder", "model | model_self_adjoint | os");
    add_flag(s, f, "--norm", "norm", "L2 | Sobolev");
  }
  add_flag(pseudo, f, "--rect", "rect", "re_min,re_max,im_min,im_max (default: bounding box of Ω)");
  add_flag(pseudo, f, "--nx", "nx", "grid nodes along Re λ");
  add_flag(pseudo, f, "--ny", "ny", "grid nodes along Im λ");
  add_flag(growth, f, "--target", "target", "resolvent | riesz");
  add_flag(growth, f, "--lambda", "lambda", "probe point re,im");
  add_flag(growth, f, "--eps-list", "eps_list", "comma-separated ε values (fractions like 1/20 allowed)");
  add_flag(growth, f, "--m-factor", "m_factor", "Riesz selection M(ε) = floor(m_factor/ε)");

  RunConfig cfg;
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    const std::string cmd = app.get_subcommands().empty() ? "" : app.get_subcommands().front()->get_name();
    return early_error(guess_out(argc, argv), cmd, "parse_arguments", e.what(), argc, argv);
  }

  cfg.command = app.get_subcommands().front()->get_name();
  try {
    if (!f.config_file.empty()) specgraph::apply_config_file(cfg, f.config_file);
    for (const auto& [k, v] : f.values) specgraph::apply_setting(cfg, k, v);
    if (f.with_os) cfg.with_os = true;
    for (const auto& s : f.sets) {
      auto eq = s.find('=');
      if (eq == std::string::npos) throw specgraph::ConfigError("--set expects key=value");
      specgraph::apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
    }
  } catch (const specgraph::ConfigError& e) {
    return early_error(cfg.out, cfg.command, "read_config", e.what(), argc, argv);
  }
  return specgraph::run_command(cfg);
}
