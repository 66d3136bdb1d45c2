#include "specgraph/commands.hpp"

#include "specgraph/disc.hpp"
#include "specgraph/errors.hpp"
#include "specgraph/geometry.hpp"
#include "specgraph/graph.hpp"
#include "specgraph/io.hpp"
#include "specgraph/nonnormal.hpp"
#include "specgraph/wkb.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>

namespace specgraph {

namespace fs = std::filesystem;

namespace {

struct Context {
  const RunConfig& cfg;
  Profile profile;
  Metadata meta;
  fs::path out;

  void write(const std::string& name, const std::string& content) const { write_atomic(out / name, content); }
  void write_json(const std::string& name, const json& j) const { write(name, j.dump(2) + "\n"); }

  Semistrip strip() const { return Semistrip::for_profile(profile, cfg.im_cutoff); }

  ActionOptions action_options() const {
    ActionOptions ao;
    ao.nodes = cfg.quad;
    ao.root_tol = cfg.newton_tol;
    return ao;
  }

  SpectralGraph graph() const {
    GraphOptions go;
    go.trace.tol = cfg.trace_tol;
    go.trace.delta = cfg.delta;
    go.trace.action = action_options();
    go.lambda0.tol = cfg.newton_tol;
    go.lambda0.action = action_options();
    return assemble_graph(profile, strip(), go);
  }

  WkbOptions wkb_options() const {
    WkbOptions wo;
    wo.tol = cfg.newton_tol;
    wo.delta = cfg.delta;
    wo.action = action_options();
    return wo;
  }
};

json parameters_json(const RunConfig& cfg) {
  json j;
  const std::string canon = canonical_config(cfg);
  std::size_t pos = 0;
  while (pos < canon.size()) {
    auto nl = canon.find('\n', pos);
    const std::string line = canon.substr(pos, nl - pos);
    auto eq = line.find('=');
    j[line.substr(0, eq)] = line.substr(eq + 1);
    pos = nl + 1;
  }
  j["out"] = cfg.out;
  return j;
}

struct ModelSpectra {
  SpectrumResult low;
  std::vector<TrustedEigenvalue> trusted;
};

ModelSpectra model_spectra(const Context& c, double eps) {
  ModelSpectra s;
  s.low = eigensolve(build_model(c.profile, eps, c.cfg.n), true);
  s.trusted = mark_trusted(s.low, eigensolve(build_model(c.profile, eps, 2 * c.cfg.n), false), c.cfg.filter_tol);
  return s;
}

struct OsSpectra {
  SpectrumResult low;
  std::vector<TrustedEigenvalue> trusted;
  double b_condition = 0.0;
};

OsSpectra os_spectra(const Context& c, double alpha, double r) {
  OsSpectra s;
  const OSOperator lo = build_os(c.profile, alpha, r, c.cfg.n);
  s.b_condition = lo.b_condition;
  s.low = eigensolve(lo, true);
  s.trusted = mark_trusted(s.low, eigensolve(build_os(c.profile, alpha, r, 2 * c.cfg.n), false), c.cfg.filter_tol);
  return s;
}

json spectrum_summary(const SpectrumResult& s, std::size_t trusted) {
  int defective = 0;
  for (bool d : s.near_defective) defective += d;
  return {{"resolution", s.resolution}, {"eigenvalues", s.size()}, {"trusted", trusted}, {"near_defective", defective}};
}

void cmd_graph(const Context& c) {
  const SpectralGraph g = c.graph();
  c.write("graph.csv", graph_csv(g, c.meta));
  c.write_json("graph.json", graph_summary_json(g, c.meta));
}

void cmd_spectrum(const Context& c) {
  const double eps = resolved_epsilon(c.cfg);
  json j;
  j["meta"] = meta_json(c.meta);
  j["which"] = c.cfg.which;
  j["epsilon"] = eps;
  j["filter_tol"] = c.cfg.filter_tol;
  if (c.cfg.which == "os") {
    const double alpha = *c.cfg.alpha, r = resolved_reynolds(c.cfg);
    OsSpectra s = os_spectra(c, alpha, r);
    j["alpha"] = alpha;
    j["reynolds"] = r;
    j["b_condition"] = s.b_condition;
    j["spectrum"] = spectrum_summary(s.low, s.trusted.size());
    c.write("spectrum.csv", spectrum_csv(s.low, c.meta));
  } else {
    ModelSpectra s = model_spectra(c, eps);
    j["spectrum"] = spectrum_summary(s.low, s.trusted.size());
    c.write("spectrum.csv", spectrum_csv(s.low, c.meta));
  }
  c.write_json("spectrum.json", j);
}

json wkb_summary(const WkbEnumeration& e) {
  json counts = {{"plus", 0}, {"minus", 0}, {"infinity", 0}};
  for (const auto& w : e.eigenvalues) counts[std::string(to_string(w.branch))] = counts[std::string(to_string(w.branch))].get<int>() + 1;
  return {{"counts", counts}, {"notes", e.notes}};
}

void cmd_wkb(const Context& c) {
  const double eps = resolved_epsilon(c.cfg);
  const SpectralGraph g = c.graph();
  const WkbEnumeration e = enumerate_wkb(c.profile, eps, g, c.wkb_options());
  c.write("graph.csv", graph_csv(g, c.meta));
  c.write("wkb.csv", wkb_csv(e.eigenvalues, c.meta));
  json j;
  j["meta"] = meta_json(c.meta);
  j["epsilon"] = eps;
  j["delta"] = c.cfg.delta;
  j["wkb"] = wkb_summary(e);
  c.write_json("wkb.json", j);
}

void cmd_compare(const Context& c) {
  const double eps = resolved_epsilon(c.cfg);
  const double delta = c.cfg.delta;
  const SpectralGraph g = c.graph();
  const WkbEnumeration e = enumerate_wkb(c.profile, eps, g, c.wkb_options());
  ModelSpectra ms = model_spectra(c, eps);
  const std::vector<cplx> trusted = trusted_values(ms.low);
  const std::vector<cplx> window = g.trim(trusted, delta);

  c.write("graph.csv", graph_csv(g, c.meta));
  c.write("wkb.csv", wkb_csv(e.eigenvalues, c.meta));
  c.write("spectrum_model.csv", spectrum_csv(ms.low, c.meta));

  json j;
  j["meta"] = meta_json(c.meta);
  j["epsilon"] = eps;
  j["delta"] = delta;
  j["c"] = c.cfg.c;
  j["model"] = spectrum_summary(ms.low, ms.trusted.size());
  const bool insufficient = window.empty();
  j["insufficient_resolution"] = insufficient;
  double worst = 0.0;
  for (cplx z : window) worst = std::max(worst, g.distance(z));
  j["concentration"] = {{"window_eigenvalues", window.size()}, {"max_distance_to_graph", worst}};
  if (!insufficient && !e.eigenvalues.empty())
    j["match"] = match_report_json(match_spectra(e.eigenvalues, trusted, c.cfg.c, eps));
  else
    j["match"] = nullptr;
  j["wkb"] = wkb_summary(e);

  if (c.cfg.with_os) {
    const double alpha = *c.cfg.alpha, r = resolved_reynolds(c.cfg);
    OsSpectra os = os_spectra(c, alpha, r);
    c.write("spectrum_os.csv", spectrum_csv(os.low, c.meta));
    const std::vector<cplx> os_window = g.trim(trusted_values(os.low), delta);
    const double h = point_set_hausdorff(os_window, window);
    double os_worst = 0.0;
    for (cplx z : os_window) os_worst = std::max(os_worst, g.distance(z));
    j["coincidence"] = {{"alpha", alpha},
                        {"reynolds", r},
                        {"b_condition", os.b_condition},
                        {"os", spectrum_summary(os.low, os.trusted.size())},
                        {"os_window_eigenvalues", os_window.size()},
                        {"hausdorff", std::isfinite(h) ? json(h) : json(nullptr)},
                        {"within_delta", std::isfinite(h) && h <= delta},
                        {"os_max_distance_to_graph", os_worst}};
  }
  c.write_json("compare.json", j);
}

Builder builder_of(const RunConfig& cfg) { return parse_builder(cfg.builder); }

void cmd_pseudo(const Context& c) {
  const double eps = resolved_epsilon(c.cfg);
  const Builder b = builder_of(c.cfg);
  const NormKind nk = parse_norm(c.cfg.norm);
  const SpectralGraph g = c.graph();
  const OmegaRegion omega = omega_region(g);
  const Rect rect = c.cfg.rect.value_or(omega.bounding_box());

  ResolventEvaluator ev = b == Builder::OrrSommerfeld
                              ? ResolventEvaluator::for_operator(
                                    build_os(c.profile, *c.cfg.alpha, resolved_reynolds(c.cfg), c.cfg.n), nk)
                              : ResolventEvaluator::for_operator(
                                    build_model(c.profile, eps, c.cfg.n, b == Builder::ModelSelfAdjoint), nk);
  const PseudospectraGrid grid = pseudospectra(ev, rect, c.cfg.nx, c.cfg.ny, nk);
  c.write("pseudo.csv", pseudo_csv(grid, c.meta));
  c.write("graph.csv", graph_csv(g, c.meta));

  const double threshold = std::exp(0.5 / eps);
  int inside = 0, above = 0, saturated = 0;
  for (int iy = 0; iy < grid.ny; ++iy)
    for (int ix = 0; ix < grid.nx; ++ix) {
      saturated += grid.saturated[static_cast<std::size_t>(iy) * grid.nx + ix];
      if (!omega.contains(grid.node(ix, iy))) continue;
      ++inside;
      above += grid.at(ix, iy) >= threshold;
    }
  json j;
  j["meta"] = meta_json(c.meta);
  j["builder"] = std::string(to_string(b));
  j["norm"] = std::string(to_string(nk));
  j["epsilon"] = eps;
  j["rect"] = {rect.re_min, rect.re_max, rect.im_min, rect.im_max};
  j["nx"] = grid.nx;
  j["ny"] = grid.ny;
  j["saturated_cells"] = saturated;
  j["omega_nodes"] = inside;
  j["omega_threshold"] = threshold;
  j["omega_fraction_above_threshold"] = inside ? double(above) / inside : 0.0;
  c.write_json("pseudo.json", j);
}

void cmd_growth(const Context& c) {
  const Builder b = builder_of(c.cfg);
  const NormKind nk = parse_norm(c.cfg.norm);
  std::vector<double> eps = c.cfg.eps_list;
  if (eps.empty()) eps = {1.0 / 20, 1.0 / 25, 1.0 / 30, 1.0 / 40, 1.0 / 50};
  GrowthOptions go;
  go.alpha = c.cfg.alpha.value_or(1.0);
  go.filter_tol = c.cfg.filter_tol;
  go.m_factor = c.cfg.m_factor;
  GrowthReport rep;
  if (c.cfg.target == "riesz") {
    rep = riesz_growth_fit(c.profile, eps, b, nk, go);
  } else {
    const double a = c.profile.a(), bb = c.profile.b();
    const cplx lambda = c.cfg.lambda.value_or(cplx(0.5 * (a + bb), -0.1 * (bb - a)));
    if (b == Builder::ModelSelfAdjoint) {
      rep = growth_fit(c.profile, lambda, eps, b, nk, go);
    } else {
      const OmegaRegion omega = omega_region(c.graph());
      rep = growth_fit(c.profile, lambda, eps, b, nk, go, &omega, c.cfg.delta);
    }
  }
  c.write_json("growth.json", growth_json(rep, c.meta));
}

bool cmd_validate(const Context& c) {
  AmSampling am;
  am.im_cutoff = c.cfg.im_cutoff;
  const AmReport r = validate_am(c.profile, am);
  json j;
  j["meta"] = meta_json(c.meta);
  j["profile"] = c.profile.name();
  j["monotone"] = r.monotone;
  j["solvable"] = r.solvable;
  j["injective"] = r.injective;
  j["pass"] = r.pass;
  j["min_derivative"] = r.min_derivative;
  json w = json::array();
  for (const auto& x : r.witnesses)
    w.push_back({{"check", x.check}, {"point", complex_json(x.point)}, {"value", x.value}, {"note", x.note}});
  j["witnesses"] = w;
  j["note"] = "partial check: conformal bijectivity is only spot-checked on a lambda grid";
  c.write_json("validate.json", j);
  return r.pass;
}

int fail(const RunConfig& cfg, const Metadata& meta, int code, std::string_view kind, std::string_view module,
         std::string_view op, std::string_view message) {
  json j;
  j["meta"] = meta_json(meta);
  j["error"] = {{"kind", kind}, {"module", module}, {"operation", op}, {"message", message}};
  j["parameters"] = parameters_json(cfg);
  std::cerr << "specgraph " << cfg.command << ": " << kind << ": " << message << "\n";
  try {
    write_atomic(fs::path(cfg.out) / "error.json", j.dump(2) + "\n");
  } catch (const std::exception& e) {
    std::cerr << "could not write error.json: " << e.what() << "\n";
  }
  return code;
}

} // namespace

int run_command(const RunConfig& cfg) {
  Metadata meta;
  meta.command = cfg.command;
  meta.config_hash = config_hash(cfg);
  try {
    Profile p = validate_config(cfg);
    Context c{cfg, std::move(p), meta, fs::path(cfg.out)};
    if (cfg.command == "graph") cmd_graph(c);
    else if (cfg.command == "spectrum") cmd_spectrum(c);
    else if (cfg.command == "wkb") cmd_wkb(c);
    else if (cfg.command == "compare") cmd_compare(c);
    else if (cfg.command == "pseudo") cmd_pseudo(c);
    else if (cfg.command == "growth") cmd_growth(c);
    else if (cfg.command == "validate") {
      if (!cmd_validate(c))
        return fail(cfg, meta, kExitNumerical, "AmValidationFailed", "profile", "validate_am",
                    "profile fails the AM checks; see validate.json");
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    return fail(cfg, meta, kExitConfig, "ConfigError", "cli", "validate_config", e.what());
  } catch (const std::invalid_argument& e) {
    return fail(cfg, meta, kExitConfig, "InvalidArgument", "cli", cfg.command, e.what());
  } catch (const NumericalError& e) {
    return fail(cfg, meta, kExitNumerical, to_string(e.kind()), e.module(), e.operation(), e.what());
  } catch (const std::exception& e) {
    return fail(cfg, meta, kExitNumerical, "InternalError", "cli", cfg.command, e.what());
  }
}

} // namespace specgraph
