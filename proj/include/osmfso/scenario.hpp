#pragma once

// Scenario files (YAML) and figure bundles.
//
// A scenario declares the scheme, aperture counts, one link set, the SNR grid
// and the run settings. Every diagnostic carries "file:line:col" and names the
// offending key. Flag overrides are applied after parsing and win over the file.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "osmfso/montecarlo.hpp"
#include "osmfso/perf.hpp"
#include "osmfso/turbulence.hpp"

namespace osmfso {

enum class LinkMode { explicit_params, geometry };

struct Scenario {
  std::string source;  ///< file the scenario came from
  std::string name;
  Scheme scheme = Scheme::osm;
  int m_tx = 2;
  int n_rx = 1;
  LinkMode link_mode = LinkMode::explicit_params;
  std::optional<LinkGeometry> geometry;  ///< set in geometry mode
  std::vector<HkParams> links;           ///< resolved, links[m * n_rx + n]
  std::vector<double> snr_db;
  ApepMethod method = ApepMethod::exact;
  Labeling labeling = Labeling::natural;
  std::int64_t max_symbols = 2'000'000;
  std::int64_t target_errors = 200;
  std::uint64_t seed = kDefaultSeed;
  std::string output;  ///< empty: standard output
  std::string code = "rate13_k3";
  std::vector<double> pdf_intensity;
  std::array<int, 2> pdf_link{0, 0};  ///< (transmitter, aperture)
  std::vector<double> mgf_s;
  int gcq_points = 60;

  SimConfig sim_config() const;
  OsmScenario osm() const;
};

struct Overrides {
  std::optional<std::vector<double>> snr_db;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output;
  std::optional<ApepMethod> method;
};

/// Parses "a:b:step" or a single value into dB points.
std::vector<double> parse_snr_range(const std::string& text);

/// Parses "pi/3", "-pi/4", "3*pi/4", "2pi", "0.25".
double parse_phase(const std::string& text);

ApepMethod parse_method(const std::string& text);
std::string method_name(ApepMethod method);
std::string scheme_name(Scheme scheme);

Scenario load_scenario(const std::string& path);
Scenario parse_scenario(const std::string& yaml_text, const std::string& source = "<string>");

/// Applies flag overrides and re-validates.
void apply_overrides(Scenario& scenario, const Overrides& overrides);

struct BundleCurve {
  std::string name;
  std::string run;  ///< subcommand that produces the curve
  Scenario scenario;
};

struct Bundle {
  std::string figure;
  std::vector<BundleCurve> curves;
};

/// A bundle is a base scenario plus a list of curves, each a run subcommand and
/// a set of keys deep-merged over the base. The base is either an inline mapping
/// or the path of a scenario file, relative to the bundle file.
Bundle load_bundle(const std::string& path);
Bundle parse_bundle(const std::string& yaml_text, const std::string& source = "<string>");

}  // namespace osmfso
