#include "specgraph/config.hpp"

#include "specgraph/errors.hpp"
#include "specgraph/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace specgraph {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

double to_double(std::string_view key, std::string_view v) {
  v = trim(v);
  // fractions such as 1/20 are convenient in epsilon lists
  if (auto slash = v.find('/'); slash != std::string_view::npos)
    return to_double(key, v.substr(0, slash)) / to_double(key, v.substr(slash + 1));
  double x = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(x))
    throw ConfigError("invalid number for '" + std::string(key) + "': '" + std::string(v) + "'");
  return x;
}

int to_int(std::string_view key, std::string_view v) {
  v = trim(v);
  int x = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ConfigError("invalid integer for '" + std::string(key) + "': '" + std::string(v) + "'");
  return x;
}

bool to_bool(std::string_view key, std::string_view v) {
  const std::string s = lower(trim(v));
  if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  throw ConfigError("invalid boolean for '" + std::string(key) + "': '" + std::string(v) + "'");
}

std::vector<double> to_list(std::string_view key, std::string_view v) {
  std::vector<double> out;
  while (true) {
    auto comma = v.find(',');
    out.push_back(to_double(key, v.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    v.remove_prefix(comma + 1);
  }
  return out;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? format_double(*v) : "none"; }

} // namespace

NormKind parse_norm(std::string_view s) {
  const std::string l = lower(s);
  if (l == "l2") return NormKind::L2;
  if (l == "sobolev") return NormKind::Sobolev;
  throw ConfigError("norm must be L2 or Sobolev");
}

Builder parse_builder(std::string_view s) {
  if (s == "model") return Builder::Model;
  if (s == "model_self_adjoint") return Builder::ModelSelfAdjoint;
  if (s == "os") return Builder::OrrSommerfeld;
  throw ConfigError("builder must be model, model_self_adjoint or os");
}

void apply_setting(RunConfig& cfg, std::string_view key_in, std::string_view value) {
  std::string key(trim(key_in));
  std::replace(key.begin(), key.end(), '-', '_');
  value = trim(value);
  if (key == "profile") cfg.profile = std::string(value);
  else if (key == "alpha") cfg.alpha = to_double(key, value);
  else if (key == "reynolds") cfg.reynolds = to_double(key, value);
  else if (key == "epsilon") cfg.epsilon = to_double(key, value);
  else if (key == "n") cfg.n = to_int(key, value);
  else if (key == "delta") cfg.delta = to_double(key, value);
  else if (key == "im_cutoff") cfg.im_cutoff = to_double(key, value);
  else if (key == "trace_tol") cfg.trace_tol = to_double(key, value);
  else if (key == "newton_tol") cfg.newton_tol = to_double(key, value);
  else if (key == "filter_tol") cfg.filter_tol = to_double(key, value);
  else if (key == "out") cfg.out = std::string(value);
  else if (key == "which") cfg.which = std::string(value);
  else if (key == "with_os") cfg.with_os = to_bool(key, value);
  else if (key == "c") cfg.c = to_double(key, value);
  else if (key == "lambda") {
    auto v = to_list(key, value);
    if (v.size() != 2) throw ConfigError("lambda must be 're,im'");
    cfg.lambda = cplx(v[0], v[1]);
  } else if (key == "eps_list") cfg.eps_list = to_list(key, value);
  else if (key == "target") cfg.target = std::string(value);
  else if (key == "norm") cfg.norm = std::string(value);
  else if (key == "builder") cfg.builder = std::string(value);
  else if (key == "rect") {
    auto v = to_list(key, value);
    if (v.size() != 4) throw ConfigError("rect must be 're_min,re_max,im_min,im_max'");
    cfg.rect = Rect{v[0], v[1], v[2], v[3]};
  } else if (key == "nx") cfg.nx = to_int(key, value);
  else if (key == "ny") cfg.ny = to_int(key, value);
  else if (key == "quad") cfg.quad = to_int(key, value);
  else if (key == "m_factor") cfg.m_factor = to_double(key, value);
  else throw ConfigError("unknown configuration key '" + key + "'");
}

void apply_config_text(RunConfig& cfg, std::string_view text) {
  int lineno = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
    apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  apply_config_text(cfg, ss.str());
}

std::string canonical_config(const RunConfig& cfg) {
  std::string s;
  auto kv = [&](std::string_view k, const std::string& v) {
    s += k;
    s += '=';
    s += v;
    s += '\n';
  };
  std::string eps;
  for (std::size_t i = 0; i < cfg.eps_list.size(); ++i) eps += (i ? "," : "") + format_double(cfg.eps_list[i]);
  kv("command", cfg.command);
  kv("profile", cfg.profile);
  kv("alpha", fmt_opt(cfg.alpha));
  kv("reynolds", fmt_opt(cfg.reynolds));
  kv("epsilon", fmt_opt(cfg.epsilon));
  kv("n", std::to_string(cfg.n));
  kv("delta", format_double(cfg.delta));
  kv("im_cutoff", format_double(cfg.im_cutoff));
  kv("trace_tol", format_double(cfg.trace_tol));
  kv("newton_tol", format_double(cfg.newton_tol));
  kv("filter_tol", format_double(cfg.filter_tol));
  kv("which", cfg.which);
  kv("with_os", cfg.with_os ? "true" : "false");
  kv("c", format_double(cfg.c));
  kv("lambda", cfg.lambda ? format_double(cfg.lambda->real()) + "," + format_double(cfg.lambda->imag()) : "none");
  kv("eps_list", eps.empty() ? "none" : eps);
  kv("target", cfg.target);
  kv("norm", cfg.norm);
  kv("builder", cfg.builder);
  kv("rect", cfg.rect ? format_double(cfg.rect->re_min) + "," + format_double(cfg.rect->re_max) + "," +
                            format_double(cfg.rect->im_min) + "," + format_double(cfg.rect->im_max)
                      : "none");
  kv("nx", std::to_string(cfg.nx));
  kv("ny", std::to_string(cfg.ny));
  kv("quad", std::to_string(cfg.quad));
  kv("m_factor", format_double(cfg.m_factor));
  return s; // `out` is deliberately excluded: moving a run must not change its hash
}

std::string config_hash(const RunConfig& cfg) {
  return fnv1a_hex(std::string(SPECGRAPH_VERSION) + "\n" + canonical_config(cfg));
}

double resolved_epsilon(const RunConfig& cfg) {
  if (cfg.epsilon) return *cfg.epsilon;
  if (cfg.reynolds && cfg.alpha) return 1.0 / std::sqrt(*cfg.alpha * *cfg.reynolds);
  throw ConfigError("one of --epsilon or --reynolds (with --alpha) is required");
}

double resolved_reynolds(const RunConfig& cfg) {
  if (!cfg.alpha) throw ConfigError("--alpha is required for the Orr-Sommerfeld problem");
  if (cfg.reynolds) return *cfg.reynolds;
  if (cfg.epsilon) return 1.0 / (*cfg.alpha * *cfg.epsilon * *cfg.epsilon);
  throw ConfigError("one of --epsilon or --reynolds is required");
}

Profile validate_config(const RunConfig& cfg) {
  static const std::vector<std::string> commands{"graph", "spectrum", "wkb", "compare", "pseudo", "growth", "validate"};
  if (std::find(commands.begin(), commands.end(), cfg.command) == commands.end())
    throw ConfigError("unknown command '" + cfg.command + "'");
  Profile p = Profile::couette();
  try {
    p = parse_profile(cfg.profile);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (cfg.command == "validate") return p;

  // spectra of non-AM profiles (q = 0 is the standard check) are allowed;
  // everything built on the graph needs the AM conditions
  const bool needs_graph = cfg.command != "spectrum";
  if (needs_graph) {
    AmSampling am;
    am.im_cutoff = cfg.im_cutoff;
    if (!validate_am(p, am).pass) throw ConfigError("profile '" + cfg.profile + "' fails the AM validation");
    if (!(cfg.delta > 0.0) || !(cfg.delta < 0.25 * (p.b() - p.a())))
      throw ConfigError("delta must satisfy 0 < delta < (b-a)/4");
  } else if (!(cfg.delta > 0.0)) {
    throw ConfigError("delta must be positive");
  }

  if (cfg.reynolds && cfg.epsilon) throw ConfigError("give exactly one of --reynolds and --epsilon");
  if (cfg.reynolds && !cfg.alpha) throw ConfigError("--reynolds requires --alpha");
  if (cfg.alpha && (*cfg.alpha == 0.0)) throw ConfigError("--alpha must be nonzero");
  if (cfg.reynolds && !(*cfg.reynolds > 0.0)) throw ConfigError("--reynolds must be positive");
  if (cfg.epsilon && !(*cfg.epsilon > 0.0)) throw ConfigError("--epsilon must be positive");
  for (double t : {cfg.trace_tol, cfg.newton_tol, cfg.filter_tol})
    if (!(t > 0.0)) throw ConfigError("tolerances must be positive");
  if (cfg.im_cutoff < 0.0) throw ConfigError("im_cutoff must be non-negative");
  if (cfg.quad < 16) throw ConfigError("quad must be at least 16");
  if (!(cfg.c > 0.0)) throw ConfigError("c must be positive");

  const bool needs_eps = cfg.command == "spectrum" || cfg.command == "wkb" || cfg.command == "compare" ||
                         cfg.command == "pseudo";
  if (needs_eps && !cfg.reynolds && !cfg.epsilon)
    throw ConfigError("command '" + cfg.command + "' needs --epsilon or --reynolds");

  bool uses_os = false;
  if (cfg.command == "spectrum") {
    if (cfg.which != "model" && cfg.which != "os") throw ConfigError("which must be model or os");
    uses_os = cfg.which == "os";
  }
  if (cfg.command == "compare") uses_os = cfg.with_os;
  if (cfg.command == "pseudo" || cfg.command == "growth") {
    uses_os = parse_builder(cfg.builder) == Builder::OrrSommerfeld;
    parse_norm(cfg.norm);
  }
  if (uses_os && !cfg.alpha) throw ConfigError("--alpha is required for the Orr-Sommerfeld problem");
  if (cfg.n < (uses_os ? 32 : 16)) throw ConfigError(uses_os ? "n must be at least 32" : "n must be at least 16");

  if (cfg.command == "pseudo") {
    if (cfg.nx < 2 || cfg.ny < 2) throw ConfigError("nx and ny must be at least 2");
    if (cfg.rect && (!(cfg.rect->re_max > cfg.rect->re_min) || !(cfg.rect->im_max > cfg.rect->im_min)))
      throw ConfigError("rect must have re_min < re_max and im_min < im_max");
  }
  if (cfg.command == "growth") {
    if (cfg.target != "resolvent" && cfg.target != "riesz") throw ConfigError("target must be resolvent or riesz");
    if (!cfg.eps_list.empty() && cfg.eps_list.size() < 4) throw ConfigError("eps_list needs at least 4 values");
    for (double e : cfg.eps_list)
      if (!(e > 0.0 && e <= 0.2)) throw ConfigError("eps_list values must lie in (0, 0.2]");
    if (!(cfg.m_factor > 0.0)) throw ConfigError("m_factor must be positive");
  }
  return p;
}

} // namespace specgraph
