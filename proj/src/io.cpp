#include "specgraph/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include <unistd.h>

namespace specgraph {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0; // drop the sign of zero
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot rename into " + path.string() + ": " + ec.message());
  }
}

json meta_json(const Metadata& m) {
  json j;
  j["version"] = m.version;
  j["config_hash"] = m.config_hash;
  j["command"] = m.command;
  return j;
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

namespace {

std::string header(const Metadata& m, std::string_view columns) {
  std::string s = "# specgraph " + m.version + "\n# config_hash " + m.config_hash + "\n# command " +
                  m.command + "\n";
  s += columns;
  s += '\n';
  return s;
}

json curve_json(const Curve& c) {
  json j;
  j["kind"] = std::string(to_string(c.kind));
  j["vertices"] = c.vertices.size();
  j["start"] = complex_json(c.vertices.front());
  j["end"] = complex_json(c.vertices.back());
  double worst = 0.0;
  for (double r : c.residuals) worst = std::max(worst, r);
  j["max_residual"] = worst;
  j["termination"] = std::string(to_string(c.termination));
  return j;
}

} // namespace

std::string graph_csv(const SpectralGraph& g, const Metadata& m) {
  std::string s = header(m, "kind,re,im,residual");
  s += "lambda0," + format_double(g.lambda0.real()) + "," + format_double(g.lambda0.imag()) + "," +
       format_double(g.lambda0_residual) + "\n";
  for (const Curve* c : {&g.gamma_plus, &g.gamma_minus, &g.gamma_inf})
    for (std::size_t i = 0; i < c->vertices.size(); ++i)
      s += std::string(to_string(c->kind)) + "," + format_double(c->vertices[i].real()) + "," +
           format_double(c->vertices[i].imag()) + "," + format_double(c->residuals[i]) + "\n";
  return s;
}

json graph_summary_json(const SpectralGraph& g, const Metadata& m) {
  json j;
  j["meta"] = meta_json(m);
  j["lambda0"] = complex_json(g.lambda0);
  j["lambda0_residual"] = g.lambda0_residual;
  j["strip"] = {{"a", g.strip.a}, {"b", g.strip.b}, {"im_cutoff", g.strip.im_cutoff}};
  j["pairing"] = g.pairing_note;
  j["branch_convention"] = std::string(kBranchNote);
  j["curves"] = json::array({curve_json(g.gamma_plus), curve_json(g.gamma_minus), curve_json(g.gamma_inf)});
  return j;
}

std::string spectrum_csv(const SpectrumResult& r, const Metadata& m) {
  std::string s = header(m, "re,im,trusted,near_defective,resolution");
  const std::string res = std::to_string(r.resolution);
  for (int i = 0; i < r.size(); ++i) {
    const bool t = i < static_cast<int>(r.trusted.size()) && r.trusted[i];
    const bool d = i < static_cast<int>(r.near_defective.size()) && r.near_defective[i];
    s += format_double(r.eigenvalues(i).real()) + "," + format_double(r.eigenvalues(i).imag()) + "," +
         (t ? "1" : "0") + "," + (d ? "1" : "0") + "," + res + "\n";
  }
  return s;
}

std::string wkb_csv(const std::vector<WkbEigenvalue>& w, const Metadata& m) {
  std::string s = header(m, "branch,k,re_mu,im_mu,residual");
  for (const auto& e : w)
    s += std::string(to_string(e.branch)) + "," + std::to_string(e.k) + "," + format_double(e.mu.real()) +
         "," + format_double(e.mu.imag()) + "," + format_double(e.residual) + "\n";
  return s;
}

json match_report_json(const MatchReport& r) {
  json j;
  json recs = json::array();
  for (const auto& m : r.records) {
    json x;
    x["branch"] = std::string(to_string(m.branch));
    x["k"] = m.k;
    x["predicted"] = complex_json(m.predicted);
    if (m.matched) {
      x["nearest"] = complex_json(m.nearest);
      x["distance"] = m.distance;
    } else {
      x["nearest"] = nullptr;
      x["distance"] = nullptr;
    }
    x["within"] = m.within;
    x["circle_count"] = m.circle_count;
    recs.push_back(x);
  }
  const MatchSummary& s = r.summary;
  json sum;
  sum["predicted"] = s.predicted;
  sum["computed"] = s.computed;
  sum["radius"] = s.radius;
  sum["within"] = s.within;
  sum["singleton_within"] = s.singleton_within;
  sum["match_rate"] = s.match_rate;
  sum["max_distance"] = s.max_distance;
  sum["mean_distance"] = s.mean_distance;
  sum["max_distance_over_eps2"] = s.max_distance_over_eps2;
  sum["unmatched_predicted"] = s.unmatched_predicted;
  sum["unmatched_computed"] = s.unmatched_computed;
  sum["min_prediction_separation"] = s.min_prediction_separation;
  sum["circles_disjoint"] = s.circles_disjoint;
  j["records"] = recs;
  j["summary"] = sum;
  return j;
}

std::string pseudo_csv(const PseudospectraGrid& g, const Metadata& m) {
  std::string s = header(m, "re,im,log10_norm,saturated");
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) {
      const cplx z = g.node(ix, iy);
      const std::size_t k = static_cast<std::size_t>(iy) * g.nx + ix;
      s += format_double(z.real()) + "," + format_double(z.imag()) + "," + format_double(std::log10(g.values[k])) +
           "," + (g.saturated[k] ? "1" : "0") + "\n";
    }
  return s;
}

json growth_json(const GrowthReport& r, const Metadata& m) {
  json j;
  j["meta"] = meta_json(m);
  j["quantity"] = r.quantity;
  j["builder"] = std::string(to_string(r.builder));
  j["norm"] = std::string(to_string(r.norm_kind));
  if (r.quantity == "resolvent") j["lambda"] = complex_json(r.lambda);
  json samples = json::array();
  for (const auto& s : r.samples) {
    json x;
    x["epsilon"] = s.epsilon;
    x["inv_epsilon"] = 1.0 / s.epsilon;
    x["value"] = s.value;
    x["n"] = s.n;
    if (r.quantity == "riesz") x["m"] = s.m;
    x["saturated"] = s.saturated;
    x["skipped"] = s.skipped;
    x["note"] = s.note;
    samples.push_back(x);
  }
  j["samples"] = samples;
  j["slope"] = r.slope;
  j["intercept"] = r.intercept;
  j["r_squared"] = r.r_squared;
  j["fitted_samples"] = r.fitted;
  j["saturation_notes"] = r.notes;
  return j;
}

} // namespace specgraph
