#include "osmfso/runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "osmfso/coded.hpp"
#include "osmfso/errors.hpp"
#include "osmfso/mgf.hpp"
#include "osmfso/perf.hpp"

namespace osmfso {

namespace {

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  CsvWriter& cell(const std::string& s) {
    if (!first_) out_ << ',';
    out_ << s;
    first_ = false;
    return *this;
  }
  CsvWriter& num(double v) { return cell(format_number(v)); }
  CsvWriter& integer(std::int64_t v) { return cell(std::to_string(v)); }
  void end() {
    out_ << '\n';
    first_ = true;
  }

 private:
  std::ostream& out_;
  bool first_ = true;
};

void header(CsvWriter& w, std::initializer_list<const char*> cols) {
  for (const char* c : cols) w.cell(c);
  w.end();
}

/// Baselines take one (alpha, b0) pair for every branch.
std::pair<double, double> uniform_k_params(const Scenario& sc) {
  const HkParams& first = sc.links.front();
  for (const auto& l : sc.links) {
    if (l.alpha != first.alpha || l.b0 != first.b0)
      throw ValidationError(sc.source + ": analytic baselines need identical alpha and b0 on every link");
    if (l.a_det != 0.0) throw ValidationError(sc.source + ": baselines use the K model; every amplitude must be 0");
  }
  return {first.alpha, first.b0};
}

double analytic_value(const Scenario& sc, const std::optional<OsmScenario>& osm, double mu) {
  const int branches = sc.m_tx * sc.n_rx;
  switch (sc.scheme) {
    case Scheme::osm:
      return abep_osm(mu, *osm, sc.method, sc.labeling);
    case Scheme::mrc_dpsk: {
      const auto [alpha, b0] = uniform_k_params(sc);
      return mrc_abep_dpsk(mu, alpha, b0, branches);
    }
    case Scheme::alamouti_bpsk: {
      const auto [alpha, b0] = uniform_k_params(sc);
      return alamouti_abep_bpsk(mu, alpha, b0, branches);
    }
    case Scheme::sc_dpsk:
      break;
  }
  throw ValidationError(sc.source + ": scheme sc_dpsk has no analytic ABEP; use simulate");
}

void check_analytic(const Scenario& sc) {
  if (sc.scheme == Scheme::sc_dpsk)
    throw ValidationError(sc.source + ": scheme sc_dpsk has no analytic ABEP; use simulate");
  if (sc.scheme != Scheme::osm) {
    if (sc.method != ApepMethod::exact)
      throw ValidationError(sc.source + ": method '" + method_name(sc.method) + "' applies to osm only");
    uniform_k_params(sc);
  }
}

std::optional<OsmScenario> osm_of(const Scenario& sc) {
  if (sc.scheme != Scheme::osm) return std::nullopt;
  return sc.osm();
}

std::vector<BerEstimate> simulate(const Scenario& sc, Execution exec) {
  const SimConfig cfg = sc.sim_config();
  return sc.scheme == Scheme::osm ? simulate_osm(cfg, exec) : simulate_baseline(cfg, exec);
}

std::string sim_method(const Scenario& sc) { return sc.scheme == Scheme::osm ? "simulate" : "semi_analytic"; }

void write_abep(const Scenario& sc, std::ostream& out) {
  check_analytic(sc);
  const auto osm = osm_of(sc);
  CsvWriter w(out);
  header(w, {"snr_db", "value", "method"});
  for (double db : sc.snr_db) {
    w.num(db).num(analytic_value(sc, osm, db_to_linear(db))).cell(method_name(sc.method));
    w.end();
  }
}

void write_simulate(const Scenario& sc, Execution exec, std::ostream& out) {
  const auto est = simulate(sc, exec);
  CsvWriter w(out);
  header(w, {"snr_db", "value", "ci_low", "ci_high", "errors", "trials", "method", "flag"});
  for (const auto& e : est) {
    w.num(e.snr_db).num(e.ber).num(e.ci_low).num(e.ci_high).integer(e.errors).integer(e.trials);
    w.cell(sim_method(sc)).cell(e.budget_exhausted ? "budget_exhausted" : "");
    w.end();
  }
}

void write_compare(const Scenario& sc, Execution exec, std::ostream& out) {
  check_analytic(sc);
  const auto osm = osm_of(sc);
  const auto est = simulate(sc, exec);
  CsvWriter w(out);
  header(w, {"snr_db", "analytic", "value", "ci_low", "ci_high", "residual", "errors", "trials", "method", "flag"});
  for (const auto& e : est) {
    const double a = analytic_value(sc, osm, db_to_linear(e.snr_db));
    std::string flag;
    if (e.budget_exhausted)
      flag = "budget_exhausted";
    else if (a < e.ci_low || a > e.ci_high)
      flag = "outside_ci";
    w.num(e.snr_db).num(a).num(e.ber).num(e.ci_low).num(e.ci_high).num(e.ber - a).integer(e.errors).integer(e.trials);
    w.cell(method_name(sc.method)).cell(flag);
    w.end();
  }
}

void write_coded(const Scenario& sc, std::ostream& out) {
  if (sc.scheme != Scheme::osm) throw ValidationError(sc.source + ": coded bounds apply to scheme osm only");
  const OsmScenario osm = sc.osm();
  const ConvCodeSpec code = sc.code == "identity" ? identity_code() : builtin_rate13_k3();
  CsvWriter w(out);
  header(w, {"snr_db", "value", "uncoded", "method", "flag"});
  for (double db : sc.snr_db) {
    const double mu = db_to_linear(db);
    const CodedBound b = coded_abep_bound(mu, code, osm);
    w.num(db);
    if (b.divergent)
      w.cell("");
    else
      w.num(b.value);
    w.num(abep_osm(mu, osm, ApepMethod::exact, sc.labeling)).cell(code.name).cell(b.divergent ? "divergent" : "");
    w.end();
  }
}

void write_pdf(const Scenario& sc, std::ostream& out) {
  if (sc.pdf_intensity.empty()) throw ValidationError(sc.source + ": key 'pdf.intensity' is required for pdf");
  const HkParams& p = sc.links.at(static_cast<std::size_t>(sc.pdf_link[0]) * sc.n_rx + sc.pdf_link[1]);
  CsvWriter w(out);
  header(w, {"intensity", "value", "method"});
  for (double x : sc.pdf_intensity) {
    w.num(x).num(hk_pdf(x, p)).cell(p.a_det == 0.0 ? "k" : "hk");
    w.end();
  }
}

void write_mgf(const Scenario& sc, std::ostream& out) {
  if (sc.mgf_s.empty()) throw ValidationError(sc.source + ": key 'mgf.s' is required for mgf");
  if (sc.m_tx < 2) throw ValidationError(sc.source + ": mgf needs m_tx >= 2 (pair of transmitters 0 and 1)");
  const PairDeltaParams p = delta_params(sc.links.at(0), sc.links.at(static_cast<std::size_t>(sc.n_rx)));
  const auto rule = specfun::gcq_nodes(sc.gcq_points);
  CsvWriter w(out);
  header(w, {"s", "value", "gcq", "method"});
  for (double s : sc.mgf_s) {
    w.num(s).num(mgf_delta(s, p)).num(mgf_delta_gcq(s, p, rule)).cell("adaptive");
    w.end();
  }
}

nlohmann::ordered_json scenario_json(const Scenario& sc) {
  nlohmann::ordered_json j;
  j["source"] = sc.source;
  j["name"] = sc.name;
  j["scheme"] = scheme_name(sc.scheme);
  j["m_tx"] = sc.m_tx;
  j["n_rx"] = sc.n_rx;
  j["link_mode"] = sc.link_mode == LinkMode::geometry ? "geometry" : "explicit";
  if (sc.geometry) {
    j["geometry"] = {{"wavelength_m", sc.geometry->wavelength},
                     {"cn2", sc.geometry->cn2},
                     {"distance_m", sc.geometry->distance},
                     {"rytov_variance", rytov_variance(*sc.geometry)}};
  }
  auto links = nlohmann::ordered_json::array();
  for (int m = 0; m < sc.m_tx; ++m) {
    for (int n = 0; n < sc.n_rx; ++n) {
      const HkParams& p = sc.links[static_cast<std::size_t>(m) * sc.n_rx + n];
      links.push_back({{"tx", m}, {"rx", n}, {"alpha", p.alpha}, {"b0", p.b0}, {"amplitude", p.a_det},
                       {"phase", p.theta}});
    }
  }
  j["links"] = links;
  j["snr_db"] = sc.snr_db;
  j["method"] = method_name(sc.method);
  j["labeling"] = sc.labeling == Labeling::gray ? "gray" : "natural";
  j["max_symbols"] = sc.max_symbols;
  j["target_errors"] = sc.target_errors;
  j["seed"] = sc.seed;
  j["code"] = sc.code;
  return j;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ValidationError(path + ": cannot open for writing");
  f << content;
  if (!f) throw ValidationError(path + ": write failed");
}

std::string render(const std::string& sub, const Scenario& sc, Execution exec) {
  std::ostringstream csv;
  write_csv(sub, sc, exec, csv);
  return csv.str();
}

void emit(const RunOptions& opt, const Scenario& sc, std::ostream& out) {
  const std::string csv = render(opt.subcommand, sc, opt.execution);
  if (sc.output.empty()) {
    if (opt.json_meta) throw ValidationError("--json-meta needs an output path (--out or 'output' in the scenario)");
    out << csv;
    return;
  }
  write_file(sc.output, csv);
  if (opt.json_meta) write_file(sc.output + ".json", metadata_json(opt.subcommand, sc));
}

void run_figures(const RunOptions& opt) {
  Bundle bundle = load_bundle(opt.scenario_path);
  const std::string dir = opt.overrides.output.value_or(".");
  std::filesystem::create_directories(dir);
  for (auto& curve : bundle.curves) {
    Overrides o = opt.overrides;
    o.output = (std::filesystem::path(dir) / (curve.scenario.name + ".csv")).string();
    apply_overrides(curve.scenario, o);
    const std::string csv = render(curve.run, curve.scenario, opt.execution);
    write_file(curve.scenario.output, csv);
    if (opt.json_meta) write_file(curve.scenario.output + ".json", metadata_json(curve.run, curve.scenario));
  }
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

void write_csv(const std::string& subcommand, const Scenario& scenario, Execution execution, std::ostream& out) {
  if (subcommand == "abep")
    write_abep(scenario, out);
  else if (subcommand == "simulate")
    write_simulate(scenario, execution, out);
  else if (subcommand == "compare")
    write_compare(scenario, execution, out);
  else if (subcommand == "coded")
    write_coded(scenario, out);
  else if (subcommand == "pdf")
    write_pdf(scenario, out);
  else if (subcommand == "mgf")
    write_mgf(scenario, out);
  else
    throw ValidationError("unknown subcommand '" + subcommand + "'");
}

std::string metadata_json(const std::string& subcommand, const Scenario& scenario) {
  nlohmann::ordered_json j;
  j["tool"] = "osmfso";
  j["version"] = kVersion;
  j["subcommand"] = subcommand;
  j["seed"] = scenario.seed;
  j["scenario"] = scenario_json(scenario);
  return j.dump(2) + "\n";
}

int run(const RunOptions& options, std::ostream& out, std::ostream& err) {
  try {
    if (options.subcommand == "figures") {
      run_figures(options);
      return kExitOk;
    }
    Scenario sc = load_scenario(options.scenario_path);
    apply_overrides(sc, options.overrides);
    emit(options, sc, out);
    return kExitOk;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ConvergenceError& e) {
    err << "numerical failure: " << e.what() << " (best estimate " << format_number(e.best_estimate())
        << ", error estimate " << format_number(e.error_estimate()) << ")\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace osmfso
