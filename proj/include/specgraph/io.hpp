#pragma once

#include "specgraph/disc.hpp"
#include "specgraph/graph.hpp"
#include "specgraph/nonnormal.hpp"
#include "specgraph/wkb.hpp"

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

namespace specgraph {

using json = nlohmann::ordered_json;

/// Provenance written as `#` comment lines in CSV and as "meta" in JSON.
struct Metadata {
  std::string command;
  std::string config_hash;
  std::string version = SPECGRAPH_VERSION;
};

/// Shortest round-trip representation; identical bits give identical text.
std::string format_double(double v);

/// 64-bit FNV-1a, 16 hex digits.
std::string fnv1a_hex(std::string_view data);

/// Writes to a temporary file in the same directory, then renames it into place.
void write_atomic(const std::filesystem::path& path, std::string_view content);

json meta_json(const Metadata& m);
json complex_json(cplx z);

/// kind,re,im,residual with λ0 as a `lambda0` row.
std::string graph_csv(const SpectralGraph& g, const Metadata& m);
json graph_summary_json(const SpectralGraph& g, const Metadata& m);

/// re,im,trusted,near_defective,resolution
std::string spectrum_csv(const SpectrumResult& s, const Metadata& m);

/// branch,k,re_mu,im_mu,residual
std::string wkb_csv(const std::vector<WkbEigenvalue>& w, const Metadata& m);

json match_report_json(const MatchReport& r);

/// re,im,log10_norm,saturated
std::string pseudo_csv(const PseudospectraGrid& g, const Metadata& m);

json growth_json(const GrowthReport& r, const Metadata& m);

} // namespace specgraph
