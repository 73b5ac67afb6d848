#include "osmfso/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <regex>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "osmfso/errors.hpp"

namespace osmfso {

namespace {

double parse_number(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ValidationError("expected a number, got '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) throw ValidationError("expected a number, got '" + text + "'");
  return v;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

/// Typed access to a YAML tree with "file:line:col: key 'k': ..." diagnostics.
class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& at, const std::string& key, const std::string& message) const {
    std::ostringstream out;
    out << source_;
    const YAML::Mark mark = at.IsDefined() ? at.Mark() : YAML::Mark::null_mark();
    if (!mark.is_null()) out << ':' << mark.line + 1 << ':' << mark.column + 1;
    out << ": ";
    if (!key.empty()) out << "key '" << key << "': ";
    out << message;
    throw ValidationError(out.str());
  }

  void require_map(const YAML::Node& node, const std::string& key) const {
    if (!node.IsMap()) fail(node, key, "expected a mapping, got " + describe(node));
  }

  void check_keys(const YAML::Node& map, const std::string& ctx, std::initializer_list<const char*> allowed) const {
    require_map(map, ctx);
    for (const auto& kv : map) {
      const std::string k = kv.first.as<std::string>();
      if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; })) {
        std::string list;
        for (const char* a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
        fail(kv.first, qualify(ctx, k), "unknown key (allowed here: " + list + ")");
      }
    }
  }

  std::string scalar(const YAML::Node& node, const std::string& key, const std::string& expected) const {
    if (!node.IsScalar()) fail(node, key, "expected " + expected + ", got " + describe(node));
    return node.Scalar();
  }

  double number(const YAML::Node& node, const std::string& key) const {
    const std::string s = scalar(node, key, "a number");
    try {
      return parse_number(s);
    } catch (const ValidationError&) {
      fail(node, key, "expected a number, got '" + s + "'");
    }
  }

  double positive(const YAML::Node& node, const std::string& key) const {
    const double v = number(node, key);
    if (!(v > 0.0)) fail(node, key, "expected a number > 0, got " + node.Scalar());
    return v;
  }

  std::int64_t integer(const YAML::Node& node, const std::string& key) const {
    const std::string s = scalar(node, key, "an integer");
    std::int64_t v = 0;
    try {
      v = node.as<std::int64_t>();
    } catch (const YAML::Exception&) {
      // 1e7-style values are accepted when they are exact integers.
      double d = 0.0;
      try {
        d = parse_number(s);
      } catch (const ValidationError&) {
        fail(node, key, "expected an integer, got '" + s + "'");
      }
      if (d != std::floor(d) || std::abs(d) > 9e15) fail(node, key, "expected an integer, got '" + s + "'");
      v = static_cast<std::int64_t>(d);
    }
    return v;
  }

  std::uint64_t unsigned64(const YAML::Node& node, const std::string& key) const {
    const std::string s = scalar(node, key, "an unsigned 64-bit integer");
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      fail(node, key, "expected an unsigned 64-bit integer, got '" + s + "'");
    try {
      return node.as<std::uint64_t>();
    } catch (const YAML::Exception&) {
      fail(node, key, "expected an unsigned 64-bit integer, got '" + s + "'");
    }
  }

  std::string string(const YAML::Node& node, const std::string& key) const {
    return scalar(node, key, "a string");
  }

  double phase(const YAML::Node& node, const std::string& key) const {
    const std::string s = scalar(node, key, "a phase (number or expression such as pi/3)");
    try {
      return parse_phase(s);
    } catch (const ValidationError& e) {
      fail(node, key, e.what());
    }
  }

  /// A list of numbers, a {start, stop, step} mapping or an "a:b:step" string.
  std::vector<double> grid(const YAML::Node& node, const std::string& key) const {
    std::vector<double> out;
    if (node.IsSequence()) {
      for (std::size_t i = 0; i < node.size(); ++i) out.push_back(number(node[i], key + "[" + std::to_string(i) + "]"));
    } else if (node.IsMap()) {
      check_keys(node, key, {"start", "stop", "step"});
      for (const char* k : {"start", "stop", "step"})
        if (!node[k]) fail(node, qualify(key, k), "missing (a range needs start, stop and step)");
      const double start = number(node["start"], qualify(key, "start"));
      const double stop = number(node["stop"], qualify(key, "stop"));
      const double step = number(node["step"], qualify(key, "step"));
      if (!(step > 0.0)) fail(node["step"], qualify(key, "step"), "expected a number > 0");
      if (stop < start) fail(node["stop"], qualify(key, "stop"), "expected stop >= start");
      out = SnrGrid::db_range(start, stop, step).db_values();
    } else if (node.IsScalar()) {
      try {
        out = parse_snr_range(node.Scalar());
      } catch (const ValidationError& e) {
        fail(node, key, e.what());
      }
    } else {
      fail(node, key, "expected a list of numbers, a {start, stop, step} mapping or \"a:b:step\"");
    }
    if (out.empty()) fail(node, key, "grid is empty; expected at least one value");
    for (std::size_t i = 1; i < out.size(); ++i)
      if (!(out[i] > out[i - 1])) fail(node, key, "values must be strictly increasing");
    return out;
  }

  static std::string qualify(const std::string& ctx, const std::string& key) {
    return ctx.empty() ? key : ctx + "." + key;
  }

  static std::string describe(const YAML::Node& node) {
    if (!node.IsDefined()) return "nothing";
    switch (node.Type()) {
      case YAML::NodeType::Null:
        return "null";
      case YAML::NodeType::Scalar:
        return "scalar '" + node.Scalar() + "'";
      case YAML::NodeType::Sequence:
        return "a list";
      case YAML::NodeType::Map:
        return "a mapping";
      default:
        return "nothing";
    }
  }

 private:
  std::string source_;
};

Scheme parse_scheme(const std::string& s) {
  if (s == "osm") return Scheme::osm;
  if (s == "sc_dpsk") return Scheme::sc_dpsk;
  if (s == "mrc_dpsk") return Scheme::mrc_dpsk;
  if (s == "alamouti_bpsk") return Scheme::alamouti_bpsk;
  throw ValidationError("expected one of osm, sc_dpsk, mrc_dpsk, alamouti_bpsk, got '" + s + "'");
}

Labeling parse_labeling(const std::string& s) {
  if (s == "natural") return Labeling::natural;
  if (s == "gray") return Labeling::gray;
  throw ValidationError("expected natural or gray, got '" + s + "'");
}

template <typename T, typename Parse>
T parse_enum(const Reader& r, const YAML::Node& node, const std::string& key, Parse parse) {
  const std::string s = r.string(node, key);
  try {
    return parse(s);
  } catch (const ValidationError& e) {
    r.fail(node, key, e.what());
  }
}

struct Transmitter {
  double amplitude = 0.0;
  double phase = 0.0;
};

void parse_explicit_aperture(const Reader& r, const YAML::Node& node, const std::string& ctx, int m_tx, int n,
                             int n_rx, std::vector<HkParams>& links) {
  r.check_keys(node, ctx, {"alpha", "b0", "transmitters"});
  for (const char* k : {"alpha", "b0", "transmitters"})
    if (!node[k]) r.fail(node, Reader::qualify(ctx, k), "missing");
  const double alpha = r.positive(node["alpha"], Reader::qualify(ctx, "alpha"));
  const double b0 = r.positive(node["b0"], Reader::qualify(ctx, "b0"));
  const YAML::Node tx = node["transmitters"];
  const std::string tx_key = Reader::qualify(ctx, "transmitters");
  if (!tx.IsSequence()) r.fail(tx, tx_key, "expected a list of {amplitude, phase}, got " + Reader::describe(tx));
  if (static_cast<int>(tx.size()) != m_tx)
    r.fail(tx, tx_key, "expected " + std::to_string(m_tx) + " entries (m_tx), got " + std::to_string(tx.size()));
  for (int m = 0; m < m_tx; ++m) {
    const YAML::Node t = tx[m];
    const std::string key = tx_key + "[" + std::to_string(m) + "]";
    r.check_keys(t, key, {"amplitude", "phase"});
    HkParams p{alpha, b0, 0.0, 0.0};
    if (t["amplitude"]) {
      p.a_det = r.number(t["amplitude"], Reader::qualify(key, "amplitude"));
      if (p.a_det < 0.0) r.fail(t["amplitude"], Reader::qualify(key, "amplitude"), "expected a number >= 0");
    }
    if (t["phase"]) p.theta = r.phase(t["phase"], Reader::qualify(key, "phase"));
    links[static_cast<std::size_t>(m) * n_rx + n] = p;
  }
}

void parse_links(const Reader& r, const YAML::Node& node, Scenario& sc) {
  r.check_keys(node, "links", {"explicit", "geometry"});
  const bool has_explicit = static_cast<bool>(node["explicit"]);
  const bool has_geometry = static_cast<bool>(node["geometry"]);
  if (has_explicit == has_geometry)
    r.fail(node, "links", "expected exactly one of 'explicit' or 'geometry'");
  sc.links.assign(static_cast<std::size_t>(sc.m_tx) * sc.n_rx, HkParams{});
  if (has_explicit) {
    sc.link_mode = LinkMode::explicit_params;
    const YAML::Node e = node["explicit"];
    if (e.IsSequence()) {
      if (static_cast<int>(e.size()) != sc.n_rx)
        r.fail(e, "links.explicit", "expected one entry per aperture (" + std::to_string(sc.n_rx) + "), got " +
                                        std::to_string(e.size()));
      for (int n = 0; n < sc.n_rx; ++n)
        parse_explicit_aperture(r, e[n], "links.explicit[" + std::to_string(n) + "]", sc.m_tx, n, sc.n_rx, sc.links);
    } else {
      for (int n = 0; n < sc.n_rx; ++n) parse_explicit_aperture(r, e, "links.explicit", sc.m_tx, n, sc.n_rx, sc.links);
    }
    return;
  }
  sc.link_mode = LinkMode::geometry;
  const YAML::Node g = node["geometry"];
  r.check_keys(g, "links.geometry", {"wavelength_nm", "cn2", "distance_m", "b0", "phases"});
  LinkGeometry geom;
  if (g["wavelength_nm"]) geom.wavelength = r.positive(g["wavelength_nm"], "links.geometry.wavelength_nm") * 1e-9;
  if (g["cn2"]) geom.cn2 = r.positive(g["cn2"], "links.geometry.cn2");
  if (!g["distance_m"]) r.fail(g, "links.geometry.distance_m", "missing");
  geom.distance = r.positive(g["distance_m"], "links.geometry.distance_m");
  const double b0 = g["b0"] ? r.positive(g["b0"], "links.geometry.b0") : 1.0;
  std::vector<double> phases(static_cast<std::size_t>(sc.m_tx), 0.0);
  if (const YAML::Node ph = g["phases"]) {
    if (!ph.IsSequence() || static_cast<int>(ph.size()) != sc.m_tx)
      r.fail(ph, "links.geometry.phases", "expected a list of " + std::to_string(sc.m_tx) + " phases (m_tx)");
    for (int m = 0; m < sc.m_tx; ++m)
      phases[m] = r.phase(ph[m], "links.geometry.phases[" + std::to_string(m) + "]");
  }
  const HkParams base = hk_params_from_geometry(geom, b0);
  for (int m = 0; m < sc.m_tx; ++m) {
    for (int n = 0; n < sc.n_rx; ++n) {
      HkParams p = base;
      p.theta = phases[m];
      sc.links[static_cast<std::size_t>(m) * sc.n_rx + n] = p;
    }
  }
  sc.geometry = geom;
}

void validate_semantics(const Reader& r, const YAML::Node& root, const Scenario& sc) {
  try {
    sc.sim_config().validate();
  } catch (const ValidationError& e) {
    r.fail(root["links"] ? root["links"] : root, "links", e.what());
  }
  if (sc.scheme == Scheme::osm) {
    try {
      sc.osm();
    } catch (const ValidationError& e) {
      r.fail(root["links"] ? root["links"] : root, "links", e.what());
    }
  }
}

Scenario parse_scenario_node(const YAML::Node& root, const std::string& source) {
  const Reader r(source);
  r.check_keys(root, "", {"name", "scheme", "m_tx", "n_rx", "links", "snr_db", "method", "labeling", "simulation",
                          "seed", "output", "code", "pdf", "mgf"});
  Scenario sc;
  sc.source = source;
  if (root["name"]) sc.name = r.string(root["name"], "name");
  if (root["scheme"]) sc.scheme = parse_enum<Scheme>(r, root["scheme"], "scheme", parse_scheme);
  for (const char* k : {"m_tx", "n_rx", "links", "snr_db"})
    if (!root[k]) r.fail(root, k, "missing required key");
  const auto m_tx = r.integer(root["m_tx"], "m_tx");
  const auto n_rx = r.integer(root["n_rx"], "n_rx");
  if (m_tx < 1 || m_tx > 64) r.fail(root["m_tx"], "m_tx", "expected an integer in [1, 64]");
  if (n_rx < 1 || n_rx > 64) r.fail(root["n_rx"], "n_rx", "expected an integer in [1, 64]");
  sc.m_tx = static_cast<int>(m_tx);
  sc.n_rx = static_cast<int>(n_rx);
  parse_links(r, root["links"], sc);
  sc.snr_db = r.grid(root["snr_db"], "snr_db");
  if (root["method"]) sc.method = parse_enum<ApepMethod>(r, root["method"], "method", parse_method);
  if (root["labeling"]) sc.labeling = parse_enum<Labeling>(r, root["labeling"], "labeling", parse_labeling);
  if (const YAML::Node s = root["simulation"]) {
    r.check_keys(s, "simulation", {"max_symbols", "target_errors"});
    if (s["max_symbols"]) {
      sc.max_symbols = r.integer(s["max_symbols"], "simulation.max_symbols");
      if (sc.max_symbols < 1000) r.fail(s["max_symbols"], "simulation.max_symbols", "expected an integer >= 1000");
    }
    if (s["target_errors"]) {
      sc.target_errors = r.integer(s["target_errors"], "simulation.target_errors");
      if (sc.target_errors < 10) r.fail(s["target_errors"], "simulation.target_errors", "expected an integer >= 10");
    }
  }
  if (root["seed"]) sc.seed = r.unsigned64(root["seed"], "seed");
  if (root["output"]) sc.output = r.string(root["output"], "output");
  if (root["code"]) {
    sc.code = r.string(root["code"], "code");
    if (sc.code != "rate13_k3" && sc.code != "identity")
      r.fail(root["code"], "code", "expected rate13_k3 or identity, got '" + sc.code + "'");
  }
  if (const YAML::Node p = root["pdf"]) {
    r.check_keys(p, "pdf", {"intensity", "link"});
    if (p["intensity"]) {
      sc.pdf_intensity = r.grid(p["intensity"], "pdf.intensity");
      if (sc.pdf_intensity.front() < 0.0) r.fail(p["intensity"], "pdf.intensity", "intensities must be >= 0");
    }
    if (const YAML::Node l = p["link"]) {
      if (!l.IsSequence() || l.size() != 2) r.fail(l, "pdf.link", "expected [transmitter, aperture]");
      sc.pdf_link = {static_cast<int>(r.integer(l[0], "pdf.link[0]")), static_cast<int>(r.integer(l[1], "pdf.link[1]"))};
      if (sc.pdf_link[0] < 0 || sc.pdf_link[0] >= sc.m_tx || sc.pdf_link[1] < 0 || sc.pdf_link[1] >= sc.n_rx)
        r.fail(l, "pdf.link", "index out of range (0-based transmitter < m_tx, aperture < n_rx)");
    }
  }
  if (const YAML::Node m = root["mgf"]) {
    r.check_keys(m, "mgf", {"s", "gcq_points"});
    if (m["s"]) {
      sc.mgf_s = r.grid(m["s"], "mgf.s");
      if (sc.mgf_s.front() < 0.0) r.fail(m["s"], "mgf.s", "values must be >= 0");
    }
    if (m["gcq_points"]) {
      const auto j = r.integer(m["gcq_points"], "mgf.gcq_points");
      if (j < 1 || j > 100000) r.fail(m["gcq_points"], "mgf.gcq_points", "expected an integer in [1, 100000]");
      sc.gcq_points = static_cast<int>(j);
    }
  }
  validate_semantics(r, root, sc);
  return sc;
}

YAML::Node load_yaml(const std::string& text, const std::string& source) {
  try {
    return YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    std::ostringstream out;
    out << source << ':' << e.mark.line + 1 << ':' << e.mark.column + 1 << ": YAML syntax error: " << e.msg;
    throw ValidationError(out.str());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Keys of `over` replace or (for two mappings) recurse into keys of `base`.
YAML::Node deep_merge(const YAML::Node& base, const YAML::Node& over) {
  if (!base.IsMap() || !over.IsMap()) return over;
  YAML::Node out(YAML::NodeType::Map);
  for (const auto& kv : base) {
    const std::string k = kv.first.as<std::string>();
    out[k] = over[k] ? deep_merge(kv.second, over[k]) : kv.second;
  }
  for (const auto& kv : over) {
    const std::string k = kv.first.as<std::string>();
    if (!base[k]) out[k] = kv.second;
  }
  return out;
}

}  // namespace

SimConfig Scenario::sim_config() const {
  SimConfig c;
  c.m_tx = m_tx;
  c.n_rx = n_rx;
  c.links = links;
  c.snr_grid = SnrGrid::from_db(snr_db);
  c.seed = seed;
  c.max_symbols = max_symbols;
  c.target_errors = target_errors;
  c.scheme = scheme;
  c.labeling = labeling;
  return c;
}

OsmScenario Scenario::osm() const { return OsmScenario::from_links(m_tx, n_rx, links); }

std::vector<double> parse_snr_range(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(trim(item));
  if (!text.empty() && text.back() == ':') parts.emplace_back();
  if (parts.size() == 1 && !parts[0].empty()) return {parse_number(parts[0])};
  if (parts.size() != 3) throw ValidationError("expected \"start:stop:step\" or a single value, got '" + text + "'");
  const double start = parse_number(parts[0]);
  const double stop = parse_number(parts[1]);
  const double step = parse_number(parts[2]);
  if (!(step > 0.0)) throw ValidationError("SNR step must be > 0, got '" + text + "'");
  if (stop < start) throw ValidationError("SNR stop must be >= start, got '" + text + "'");
  return SnrGrid::db_range(start, stop, step).db_values();
}

double parse_phase(const std::string& text) {
  static const std::regex re(R"(^\s*([+-])?\s*([0-9]*\.?[0-9]+(?:[eE][+-]?[0-9]+)?)?\s*(\*?\s*pi)?\s*(?:/\s*([0-9]*\.?[0-9]+))?\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re) || (!m[2].matched && !m[3].matched))
    throw ValidationError("expected a phase such as 0.5, pi/3 or -3*pi/4, got '" + text + "'");
  if (m[3].matched && m[3].str().find('*') != std::string::npos && !m[2].matched)
    throw ValidationError("expected a phase such as 0.5, pi/3 or -3*pi/4, got '" + text + "'");
  double v = m[2].matched ? parse_number(m[2].str()) : 1.0;
  if (m[3].matched) v *= std::numbers::pi;
  if (m[4].matched) {
    const double den = parse_number(m[4].str());
    if (den == 0.0) throw ValidationError("phase denominator is zero in '" + text + "'");
    v /= den;
  }
  return m[1].matched && m[1].str() == "-" ? -v : v;
}

ApepMethod parse_method(const std::string& text) {
  if (text == "exact") return ApepMethod::exact;
  if (text == "chiani") return ApepMethod::chiani;
  if (text == "asym" || text == "asymptotic") return ApepMethod::asymptotic;
  throw ValidationError("expected exact, chiani or asym, got '" + text + "'");
}

std::string method_name(ApepMethod method) {
  switch (method) {
    case ApepMethod::exact:
      return "exact";
    case ApepMethod::chiani:
      return "chiani";
    case ApepMethod::asymptotic:
      return "asym";
  }
  return "unknown";
}

std::string scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::osm:
      return "osm";
    case Scheme::sc_dpsk:
      return "sc_dpsk";
    case Scheme::mrc_dpsk:
      return "mrc_dpsk";
    case Scheme::alamouti_bpsk:
      return "alamouti_bpsk";
  }
  return "unknown";
}

Scenario parse_scenario(const std::string& yaml_text, const std::string& source) {
  const YAML::Node root = load_yaml(yaml_text, source);
  if (!root.IsMap()) Reader(source).fail(root, "", "expected a mapping at the top level");
  return parse_scenario_node(root, source);
}

Scenario load_scenario(const std::string& path) { return parse_scenario(read_file(path), path); }

void apply_overrides(Scenario& scenario, const Overrides& overrides) {
  if (overrides.snr_db) {
    if (overrides.snr_db->empty()) throw ValidationError("--snr-db: grid is empty; expected at least one value");
    scenario.snr_db = *overrides.snr_db;
    SnrGrid::from_db(scenario.snr_db);
  }
  if (overrides.seed) scenario.seed = *overrides.seed;
  if (overrides.output) scenario.output = *overrides.output;
  if (overrides.method) scenario.method = *overrides.method;
}

Bundle parse_bundle(const std::string& yaml_text, const std::string& source) {
  const YAML::Node root = load_yaml(yaml_text, source);
  const Reader r(source);
  if (!root.IsMap()) r.fail(root, "", "expected a mapping at the top level");
  r.check_keys(root, "", {"figure", "base", "curves"});
  for (const char* k : {"figure", "base", "curves"})
    if (!root[k]) r.fail(root, k, "missing required key");
  Bundle b;
  b.figure = r.string(root["figure"], "figure");
  YAML::Node base = root["base"];
  std::string base_source = source;
  if (base.IsScalar()) {
    // A path to a scenario file, relative to the bundle.
    const auto path = std::filesystem::path(source).parent_path() / base.Scalar();
    std::string text;
    try {
      text = read_file(path.string());
    } catch (const ValidationError& e) {
      r.fail(base, "base", e.what());
    }
    base_source = path.lexically_normal().string();
    base = load_yaml(text, base_source);
  }
  r.require_map(base, "base");
  const YAML::Node curves = root["curves"];
  if (!curves.IsSequence() || curves.size() == 0) r.fail(curves, "curves", "expected a non-empty list of curves");
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const YAML::Node c = curves[i];
    const std::string ctx = "curves[" + std::to_string(i) + "]";
    r.check_keys(c, ctx, {"name", "run", "set"});
    if (!c["name"]) r.fail(c, ctx + ".name", "missing");
    if (!c["run"]) r.fail(c, ctx + ".run", "missing");
    BundleCurve curve;
    curve.name = r.string(c["name"], ctx + ".name");
    if (curve.name.find_first_of("/\\ ") != std::string::npos || curve.name.empty())
      r.fail(c["name"], ctx + ".name", "expected a file-name-safe string");
    curve.run = r.string(c["run"], ctx + ".run");
    if (curve.run != "abep" && curve.run != "simulate" && curve.run != "compare" && curve.run != "coded")
      r.fail(c["run"], ctx + ".run", "expected abep, simulate, compare or coded, got '" + curve.run + "'");
    const YAML::Node merged = c["set"] ? deep_merge(base, c["set"]) : base;
    curve.scenario = parse_scenario_node(merged, base_source + " (" + source + ", " + ctx + ")");
    curve.scenario.name = b.figure + "_" + curve.name;
    b.curves.push_back(std::move(curve));
  }
  return b;
}

Bundle load_bundle(const std::string& path) { return parse_bundle(read_file(path), path); }

}  // namespace osmfso
