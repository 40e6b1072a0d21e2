#include "imcf/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "imcf/errors.hpp"
#include "imcf/flow.hpp"
#include "imcf/io.hpp"
#include "imcf/isoperimetry.hpp"
#include "imcf/regsolver.hpp"

namespace imcf::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

const std::set<std::string> kCommands = {"flow", "solve-reg", "bound", "iso", "rigidity", "sweep", "report"};
const std::vector<std::string> kParamShortcuts = {"m", "b", "lambda", "delta", "center", "width"};

// Default volume grid: 16 log-spaced points on [0.1, 500] (32 for iso).
std::vector<double> log_grid(double lo, double hi, int count) {
  std::vector<double> g(count);
  for (int i = 0; i < count; ++i)
    g[i] = count == 1 ? lo : lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
  g.back() = hi;
  return g;
}

double parse_number(const std::string& text, const std::string& field) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double x = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || !std::isfinite(x)) throw ConfigError(field, "not a number: '" + text + "'");
  return x;
}

std::vector<double> number_list(const json& v, const std::string& field) {
  std::vector<double> out;
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array() || v.empty()) throw ConfigError(field, "expected a number or a non-empty array");
  for (const auto& x : v) {
    if (!x.is_number()) throw ConfigError(field, "expected numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) throw ConfigError(field, "expected a number");
  return v.get<double>();
}

std::vector<double> parse_v_grid(const json& v) {
  if (v.is_string()) {
    // lo:hi:count, log-spaced
    std::vector<std::string> parts;
    std::stringstream ss(v.get<std::string>());
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw ConfigError("v_grid", "expected lo:hi:count");
    const double lo = parse_number(parts[0], "v_grid");
    const double hi = parse_number(parts[1], "v_grid");
    const double count = parse_number(parts[2], "v_grid");
    if (!(lo > 0.0) || !(hi > lo) || count < 1 || count != std::floor(count))
      throw ConfigError("v_grid", "need 0 < lo < hi and an integer count >= 1");
    return log_grid(lo, hi, static_cast<int>(count));
  }
  auto g = number_list(v, "v_grid");
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!(g[i] > 0.0)) throw ConfigError("v_grid", "volumes must be positive");
    if (i > 0 && !(g[i] > g[i - 1])) throw ConfigError("v_grid", "volumes must be strictly increasing");
  }
  return g;
}

json summary_base(const RunConfig& c) {
  json cfg;
  cfg["metric"] = c.metric;
  if (c.s0) cfg["s0"] = *c.s0;
  if (c.t_max) cfg["t_max"] = *c.t_max;
  cfg["samples"] = c.samples;
  if (!c.epsilon.empty()) cfg["epsilon"] = c.epsilon;
  if (!c.L.empty()) cfg["L"] = c.L;
  if (!c.n.empty()) cfg["n"] = c.n;
  if (!c.v_grid.empty()) cfg["v_grid"] = c.v_grid;
  if (c.tol) cfg["tol"] = *c.tol;
  if (!c.sweep_params.empty()) cfg["sweep"] = c.sweep_params;
  cfg["format"] = c.format;
  return {{"command", c.command}, {"config", cfg}};
}

bool want_csv(const RunConfig& c) { return c.format != "json"; }
bool want_json(const RunConfig& c) { return c.format != "csv"; }

double default_flow_start(const RadialMetric& metric) {
  if (metric.has_horizon()) return metric.s_min();
  return metric.s_min() + 1e-3;
}

double default_solve_start(const RadialMetric& metric) {
  if (metric.has_horizon()) return 1.25 * metric.s_min();
  return metric.s_min() + 1.0;
}

double checked_start(const RadialMetric& metric, double s0) {
  if (!(s0 >= metric.s_min()) || !(s0 < metric.s_max()))
    throw ConfigError("s0", "outside the metric domain [" + io::fmt(metric.s_min()) + ", " +
                                io::fmt(metric.s_max()) + ")");
  return s0;
}

// Flow time whose sphere encloses (1 + 1e-3) v_hi above the start sphere.
double covering_time(const RadialMetric& metric, double s0, double v_hi) {
  const FlowProfile probe = exact_flow(metric, s0, 1e-6, 2);
  const double V = metric.volume(s0) + 1.001 * v_hi;
  if (V >= metric.volume(metric.s_max())) throw DomainError("volume grid exceeds the metric domain");
  return std::max(probe.level_at(metric.coordinate_at_volume(V)), 1e-3);
}

struct Outcome {
  json checks = json::object();
  json extra = json::object();
};

Outcome run_flow(const RunConfig& c, const RadialMetric& metric, const fs::path& dir) {
  const double s0 = checked_start(metric, c.s0.value_or(default_flow_start(metric)));
  const FlowProfile profile = exact_flow(metric, s0, c.t_max.value_or(12.0), c.samples);
  if (want_csv(c)) io::write_text(dir / "profile.csv", io::profile_csv(profile));
  if (want_json(c)) io::write_json(dir / "profile.json", io::profile_json(profile));
  io::write_json(dir / "jumps.json", io::jumps_json(profile));

  const double tol = c.tol.value_or(1e-4);
  const auto vg = volume_growth_check(profile);
  const auto lip = lipschitz_bound_check(profile, tol);
  const auto ger = geroch_check(profile);
  io::write_json(dir / "checks.json", {{"volume_growth", io::volume_growth_json(vg)},
                                       {"lipschitz", io::lipschitz_json(lip)},
                                       {"geroch", io::geroch_json(ger)}});
  Outcome o;
  o.checks["volume_growth"] = vg.max_deviation <= tol;
  o.checks["lipschitz"] = lip.holds;
  if (ger.hypothesis_met) o.checks["geroch"] = ger.nondecreasing;
  o.extra = {{"rows", profile.samples.size()}, {"jumps", profile.jumps.size()}, {"truncated", profile.truncated}};
  return o;
}

Outcome run_solve(const RunConfig& c, const RadialMetric& metric, const fs::path& dir) {
  const double s0 = checked_start(metric, c.s0.value_or(default_solve_start(metric)));
  std::vector<ScheduleStage> schedule;
  for (std::size_t i = 0; i < c.epsilon.size(); ++i) {
    ScheduleStage st;
    st.epsilon = c.epsilon[i];
    st.L = c.L.empty() ? auto_level(metric, s0, st.epsilon) : c.L[c.L.size() == 1 ? 0 : i];
    st.n = c.n.empty() ? 2048 : c.n[c.n.size() == 1 ? 0 : i];
    schedule.push_back(st);
  }
  const ConvergenceReport rep = convergence_study(metric, s0, schedule);
  const SolverResult& last = rep.solutions.back();
  const ScheduleStage& fin = schedule.back();
  const BarrierReport bar = subsolution_barrier(make_problem(metric, s0, fin.L, fin.epsilon, fin.n), last);

  if (want_csv(c)) io::write_text(dir / "solution.csv", io::solution_csv(last));
  if (want_json(c)) io::write_json(dir / "solution.json", io::solution_json(last));
  json conv = io::convergence_json(rep);
  conv["s0"] = s0;
  conv["barrier"] = io::barrier_json(bar);
  io::write_json(dir / "convergence.json", conv);

  Outcome o;
  bool converged = true;
  for (const auto& st : rep.stages) converged = converged && st.converged;
  o.checks["converged"] = converged;
  o.checks["convergence_monotone"] = rep.passed;
  if (bar.sufficient_range) o.checks["barrier"] = bar.holds;
  o.extra = {{"final_core_error", rep.stages.back().core_error}, {"barrier_note", bar.note}};
  return o;
}

Outcome run_bound(const RunConfig& c, const RadialMetric& metric, const fs::path& dir) {
  const double s0 = checked_start(metric, c.s0.value_or(default_flow_start(metric)));
  const auto grid = c.v_grid.empty() ? log_grid(0.1, 500.0, 16) : c.v_grid;
  const double t_max = c.t_max.value_or(covering_time(metric, s0, grid.back()));
  const FlowProfile profile = exact_flow(metric, s0, t_max, c.samples);
  const auto reports = check_bound(profile, grid);
  if (want_csv(c)) io::write_text(dir / "bound.csv", io::bound_csv(reports));
  if (want_json(c)) io::write_json(dir / "bound.json", io::bound_json(reports));
  Outcome o;
  bool pass = true, hyp = true;
  double min_slack = INFINITY;
  for (const auto& r : reports) {
    pass = pass && r.verdict == Verdict::Pass;
    hyp = hyp && r.verdict != Verdict::HypothesisNotMet;
    min_slack = std::min(min_slack, r.slack);
  }
  o.checks["bound"] = pass;
  o.extra = {{"hypothesis_met", hyp}, {"min_slack", min_slack}, {"initial_area", profile.initial_area()}};
  return o;
}

Outcome run_iso(const RunConfig& c, const RadialMetric& metric, const fs::path& dir) {
  const auto grid = c.v_grid.empty() ? log_grid(0.1, 500.0, 32) : c.v_grid;
  const IsoProfile iso = build_iso_profile(metric, grid);
  const auto mono = monotonicity_check(iso);
  const auto fol = exterior_foliation_check(metric);
  if (want_csv(c)) io::write_text(dir / "iso.csv", io::iso_csv(iso));
  if (want_json(c)) io::write_json(dir / "iso.json", io::iso_json(iso));
  io::write_json(dir / "checks.json",
                 {{"monotonicity", io::monotonicity_json(mono)}, {"exterior_foliation", io::foliation_json(fol)}});
  Outcome o;
  o.checks["monotonicity"] = mono.passed;
  o.checks["exterior_foliation"] = fol.positive;
  return o;
}

Outcome run_rigidity(const RunConfig& c, const RadialMetric& metric, const fs::path& dir) {
  const double s0 = checked_start(metric, c.s0.value_or(default_flow_start(metric)));
  const auto grid = c.v_grid.empty() ? log_grid(0.1, 500.0, 16) : c.v_grid;
  const double t_max = c.t_max.value_or(covering_time(metric, s0, grid.back()));
  const FlowProfile profile = exact_flow(metric, s0, t_max, c.samples);
  const IsoProfile iso = build_iso_profile(metric, grid);
  const RigidityReport rep = rigidity_probe(metric, profile, iso, c.tol.value_or(1e-6));
  io::write_json(dir / "rigidity.json", io::rigidity_json(rep));
  Outcome o;
  o.checks["rigidity_consistent"] = rep.consistent;
  o.extra = {{"equality_found", rep.equality_found}, {"min_relative_gap", rep.min_relative_gap}};
  return o;
}

bool all_true(const json& checks) {
  for (const auto& [_, v] : checks.items())
    if (!v.get<bool>()) return false;
  return true;
}

json error_json(const std::string& type, const std::exception& e) {
  json j = {{"type", type}, {"message", e.what()}};
  if (auto* ce = dynamic_cast<const ConfigError*>(&e)) j["field"] = ce->field();
  return j;
}

// Runs one single-metric command into dir; returns the summary document.
json run_single(const RunConfig& c, const fs::path& dir, int& status) {
  json summary = summary_base(c);
  try {
    const RadialMetric metric = io::metric_from_json(c.metric);
    Outcome o;
    if (c.command == "flow") o = run_flow(c, metric, dir);
    else if (c.command == "solve-reg") o = run_solve(c, metric, dir);
    else if (c.command == "bound") o = run_bound(c, metric, dir);
    else if (c.command == "iso") o = run_iso(c, metric, dir);
    else o = run_rigidity(c, metric, dir);
    summary["status"] = "ok";
    summary["checks"] = o.checks;
    summary["details"] = o.extra;
    summary["passed"] = all_true(o.checks);
    status = summary["passed"].get<bool>() ? 0 : 1;
  } catch (const ConfigError& e) {
    summary["status"] = "config-error";
    summary["error"] = error_json("config", e);
    summary["passed"] = false;
    status = 2;
  } catch (const std::exception& e) {
    summary["status"] = "computation-error";
    summary["error"] = error_json(dynamic_cast<const DomainError*>(&e) ? "domain" : "numerical", e);
    summary["passed"] = false;
    status = 1;
  }
  io::write_json(dir / "summary.json", summary);
  return summary;
}

int run_sweep(const RunConfig& c, const fs::path& dir, std::ostream& log) {
  // Cartesian product over parameter lists and epsilon; one single-stage solve each.
  std::vector<RunConfig> runs;
  std::vector<std::pair<std::string, std::vector<double>>> axes(c.sweep_params.begin(), c.sweep_params.end());
  std::vector<std::size_t> idx(axes.size(), 0);
  const std::vector<double> eps = c.epsilon.empty() ? std::vector<double>{1e-2} : c.epsilon;
  for (;;) {
    for (double e : eps) {
      RunConfig r = c;
      r.command = "solve-reg";
      r.sweep_params.clear();
      r.epsilon = {e};
      r.L = c.L.empty() ? std::vector<double>{} : std::vector<double>{c.L.front()};
      r.n = c.n.empty() ? std::vector<int>{} : std::vector<int>{c.n.front()};
      for (std::size_t a = 0; a < axes.size(); ++a) r.metric["params"][axes[a].first] = axes[a].second[idx[a]];
      runs.push_back(std::move(r));
    }
    std::size_t a = 0;
    for (; a < axes.size(); ++a) {
      if (++idx[a] < axes[a].second.size()) break;
      idx[a] = 0;
    }
    if (a == axes.size()) break;
  }

  std::vector<std::string> names(runs.size());
  for (std::size_t i = 0; i < runs.size(); ++i) {
    json key = summary_base(runs[i])["config"];
    key.erase("format");
    names[i] = "run-" + io::fnv1a_hex(key.dump());
  }
  {
    std::set<std::string> uniq(names.begin(), names.end());
    if (uniq.size() != names.size()) throw ConfigError("sweep", "duplicate parameter combinations");
  }

  std::vector<json> summaries(runs.size());
  std::vector<int> statuses(runs.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < runs.size();) {
      const fs::path sub = dir / names[i];
      fs::create_directories(sub);
      io::write_json(sub / "params.json", summary_base(runs[i])["config"]);
      summaries[i] = run_single(runs[i], sub, statuses[i]);
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned nthreads = std::min<unsigned>(c.jobs > 0 ? c.jobs : hw, runs.size());
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::vector<std::size_t> order(runs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return names[a] < names[b]; });
  json entries = json::array();
  json checks = json::object();
  int status = 0;
  for (std::size_t i : order) {
    entries.push_back({{"directory", names[i]},
                       {"params", summary_base(runs[i])["config"]},
                       {"status", summaries[i]["status"]},
                       {"passed", summaries[i]["passed"]}});
    checks[names[i]] = summaries[i]["passed"];
    status = std::max(status, statuses[i]);
    log << names[i] << ' ' << (summaries[i]["passed"].get<bool>() ? "pass" : "FAIL") << '\n';
  }
  json summary = summary_base(c);
  summary["status"] = "ok";
  summary["runs"] = entries;
  summary["checks"] = checks;
  summary["passed"] = all_true(checks);
  io::write_json(dir / "summary.json", summary);
  return status == 2 ? 2 : (summary["passed"].get<bool>() ? 0 : 1);
}

int run_report(const RunConfig& c, const fs::path& dir, std::ostream& log) {
  const std::vector<std::string> inputs = c.inputs.empty() ? std::vector<std::string>{c.out} : c.inputs;
  const fs::path own = fs::weakly_canonical(dir / "summary.json");
  json sources = json::array();
  json checks = json::object();
  for (const auto& in : inputs) {
    if (!fs::is_directory(in)) throw ConfigError("from", "not a directory: " + in);
    std::vector<fs::path> found;
    for (const auto& e : fs::recursive_directory_iterator(in))
      if (e.is_regular_file() && e.path().filename() == "summary.json") found.push_back(e.path());
    std::sort(found.begin(), found.end());
    for (const auto& p : found) {
      if (fs::weakly_canonical(p) == own) continue;
      const json s = io::read_json(p);
      if (s.value("command", "") == "report") continue;
      const std::string rel = (fs::path(in).filename() / fs::relative(p.parent_path(), in)).lexically_normal().generic_string();
      json entry = {{"source", rel},
                    {"command", s.value("command", "")},
                    {"status", s.value("status", "")},
                    {"checks", s.value("checks", json::object())},
                    {"passed", s.value("passed", false)}};
      for (const auto& [k, v] : entry["checks"].items()) checks[rel + ":" + k] = v;
      if (entry["checks"].empty()) checks[rel + ":status"] = entry["passed"];
      sources.push_back(entry);
    }
  }
  if (sources.empty()) throw ConfigError("from", "no summary.json found");
  json summary = {{"command", "report"}, {"status", "ok"}, {"sources", sources}, {"checks", checks}};
  summary["passed"] = all_true(checks);
  io::write_json(dir / "summary.json", summary);
  log << "report: " << sources.size() << " sources, " << (summary["passed"].get<bool>() ? "all pass" : "failures")
      << '\n';
  return summary["passed"].get<bool>() ? 0 : 1;
}

}  // namespace

RunConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config", "expected a JSON object");
  static const std::set<std::string> known = {"command", "metric", "s0",  "t_max", "samples", "epsilon",
                                              "L",       "n",      "v_grid", "tol", "format",  "out",
                                              "seedless", "from",  "jobs", "m",     "b",       "lambda",
                                              "delta",   "center", "width"};
  for (const auto& [k, _] : doc.items())
    if (!known.count(k)) throw ConfigError(k, "unknown key");

  RunConfig c;
  if (!doc.contains("command") || !doc["command"].is_string()) throw ConfigError("command", "missing");
  c.command = doc["command"].get<std::string>();
  if (!kCommands.count(c.command)) throw ConfigError("command", "unknown command '" + c.command + "'");

  if (doc.contains("out")) {
    if (!doc["out"].is_string()) throw ConfigError("out", "expected a path");
    c.out = doc["out"].get<std::string>();
  }
  if (doc.contains("format")) {
    c.format = doc["format"].is_string() ? doc["format"].get<std::string>() : "";
    if (c.format != "csv" && c.format != "json" && c.format != "both")
      throw ConfigError("format", "expected csv, json or both");
  }
  if (doc.contains("seedless") && !doc["seedless"].is_boolean()) throw ConfigError("seedless", "expected a boolean");
  if (doc.contains("tol")) {
    c.tol = number(doc["tol"], "tol");
    if (!(*c.tol > 0.0)) throw ConfigError("tol", "must be positive");
  }
  if (doc.contains("jobs")) {
    const double j = number(doc["jobs"], "jobs");
    if (j < 0 || j != std::floor(j)) throw ConfigError("jobs", "expected a nonnegative integer");
    c.jobs = static_cast<int>(j);
  }

  if (c.command == "report") {
    if (doc.contains("from")) {
      const json& f = doc["from"];
      if (f.is_string()) c.inputs = {f.get<std::string>()};
      else if (f.is_array())
        for (const auto& x : f) {
          if (!x.is_string()) throw ConfigError("from", "expected directory paths");
          c.inputs.push_back(x.get<std::string>());
        }
      else throw ConfigError("from", "expected directory paths");
    }
    return c;
  }
  if (doc.contains("from")) throw ConfigError("from", "only valid for report");

  if (!doc.contains("metric")) throw ConfigError("metric", "missing");
  c.metric = doc["metric"].is_string() ? json{{"preset", doc["metric"].get<std::string>()}} : doc["metric"];
  if (!c.metric.is_object()) throw ConfigError("metric", "expected a preset name or an object");

  for (const auto& key : kParamShortcuts) {
    if (!doc.contains(key)) continue;
    if (!c.metric.contains("preset")) throw ConfigError(key, "parameter shortcuts need a preset metric");
    auto values = number_list(doc[key], key);
    if (c.command == "sweep") {
      c.sweep_params[key] = values;
    } else {
      if (values.size() != 1) throw ConfigError(key, "lists are only valid for sweep");
      c.metric["params"][key] = values.front();
    }
  }

  if (doc.contains("s0")) c.s0 = number(doc["s0"], "s0");
  if (doc.contains("t_max")) {
    c.t_max = number(doc["t_max"], "t_max");
    if (!(*c.t_max > 0.0)) throw ConfigError("t_max", "must be positive");
  }
  if (doc.contains("samples")) {
    const double s = number(doc["samples"], "samples");
    if (s < 2 || s != std::floor(s) || s > 1e7) throw ConfigError("samples", "expected an integer >= 2");
    c.samples = static_cast<int>(s);
  }
  if (doc.contains("epsilon")) c.epsilon = number_list(doc["epsilon"], "epsilon");
  for (double e : c.epsilon)
    if (!(e > 0.0) || e > 1.0) throw ConfigError("epsilon", "must lie in (0, 1]");
  if (doc.contains("L")) c.L = number_list(doc["L"], "L");
  for (double l : c.L)
    if (!(l > 2.0)) throw ConfigError("L", "must exceed 2");
  if (doc.contains("n")) {
    for (double x : number_list(doc["n"], "n")) {
      if (x < 64 || x != std::floor(x) || x > 1e7) throw ConfigError("n", "expected an integer >= 64");
      c.n.push_back(static_cast<int>(x));
    }
  }
  if (doc.contains("v_grid")) c.v_grid = parse_v_grid(doc["v_grid"]);

  if (c.command == "solve-reg") {
    if (c.epsilon.empty()) c.epsilon = {1e-2};
    if (c.L.size() > 1 && c.L.size() != c.epsilon.size()) throw ConfigError("L", "length must match epsilon");
    if (c.n.size() > 1 && c.n.size() != c.epsilon.size()) throw ConfigError("n", "length must match epsilon");
  }
  if (c.command == "sweep" && (c.L.size() > 1 || c.n.size() > 1))
    throw ConfigError(c.L.size() > 1 ? "L" : "n", "sweep takes a single value");
  return c;
}

int run(const RunConfig& c, std::ostream& log) {
  const fs::path dir = c.out;
  try {
    fs::create_directories(dir);
  } catch (const fs::filesystem_error& e) {
    log << "error: out: " << e.what() << '\n';
    return 2;
  }
  int status = 0;
  try {
    if (c.command == "sweep") return run_sweep(c, dir, log);
    if (c.command == "report") return run_report(c, dir, log);
  } catch (const ConfigError& e) {
    io::write_json(dir / "summary.json",
                   {{"command", c.command}, {"status", "config-error"}, {"error", error_json("config", e)},
                    {"passed", false}});
    log << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    io::write_json(dir / "summary.json",
                   {{"command", c.command}, {"status", "computation-error"}, {"error", error_json("numerical", e)},
                    {"passed", false}});
    log << "error: " << e.what() << '\n';
    return 1;
  }
  const json s = run_single(c, dir, status);
  if (s.contains("error")) log << "error: " << s["error"]["message"].get<std::string>() << '\n';
  const json checks = s.value("checks", json::object());
  for (const auto& [k, v] : checks.items())
    log << k << ": " << (v.get<bool>() ? "pass" : "FAIL") << '\n';
  return status;
}

namespace {

json metric_argument(const std::string& text) {
  if (!text.empty() && text.front() == '{') {
    try {
      return json::parse(text);
    } catch (const json::parse_error& e) {
      throw ConfigError("metric", std::string("malformed JSON: ") + e.what());
    }
  }
  if (fs::is_regular_file(text)) return io::read_json(text);
  return text;
}

json list_argument(const std::string& text, const std::string& field) {
  json arr = json::array();
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) arr.push_back(parse_number(p, field));
  if (arr.empty()) throw ConfigError(field, "empty list");
  return arr;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weak inverse mean curvature flow and isoperimetry toolkit for radial metrics"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out, format, tol;
  bool seedless = false;
  app.add_option("--config", config_path, "JSON run configuration; flags override its values");
  app.add_option("--out", out, "output directory (default: out)");
  app.add_option("--format", format, "csv, json or both (default: both)");
  app.add_flag("--seedless", seedless, "reserved; all computations are deterministic");
  app.add_option("--tol", tol, "verdict tolerance (flow checks 1e-4, rigidity 1e-6)");

  struct RawOption {
    std::string flag;
    std::string value;
  };
  std::map<std::string, RawOption> raw;  // "<command>/<key>"
  auto opt = [&](CLI::App* sub, const std::string& flag, const std::string& key, const std::string& help) {
    RawOption& r = raw[sub->get_name() + "/" + key];
    r.flag = flag;
    sub->add_option(flag, r.value, help);
  };
  const std::vector<std::pair<std::string, std::string>> descriptions = {
      {"flow", "weak flow profile of centered spheres"},
      {"solve-reg", "regularized level-set solve with epsilon continuation"},
      {"bound", "compare sphere areas with the isoperimetric bound"},
      {"iso", "restricted isoperimetric profile (centered balls and annuli)"},
      {"rigidity", "equality probe against the classical bound"},
      {"sweep", "parameter grid of regularized solves"},
      {"report", "aggregate summary.json files without recomputing"}};
  for (const auto& [name, help] : descriptions) {
    CLI::App* sub = app.add_subcommand(name, help);
    if (name == "report") {
      opt(sub, "--from", "from", "comma-separated directories to scan (default: --out)");
      continue;
    }
    opt(sub, "--metric", "metric", "preset name, inline JSON, or path to a metric JSON file");
    for (const auto& p : kParamShortcuts) opt(sub, "--" + p, p, "preset parameter " + p);
    opt(sub, "--s0", "s0", "start coordinate");
    if (name == "flow" || name == "bound" || name == "rigidity") {
      opt(sub, "--t-max", "t_max", "final flow time");
      opt(sub, "--samples", "samples", "profile samples (default 512)");
    }
    if (name == "solve-reg" || name == "sweep") {
      opt(sub, "--eps", "epsilon", "comma-separated epsilon schedule");
      opt(sub, "--L", "L", "outer levels (default: automatic)");
      opt(sub, "--n", "n", "grid sizes (default 2048)");
    }
    if (name == "bound" || name == "iso" || name == "rigidity")
      opt(sub, "--v-grid", "v_grid", "lo:hi:count (log-spaced) or comma-separated volumes");
    if (name == "sweep") opt(sub, "--jobs", "jobs", "worker threads (default: hardware)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::string out_dir, command;
  try {
    json doc = config_path.empty() ? json::object() : io::read_json(config_path);
    if (!doc.is_object()) throw ConfigError("config", "expected a JSON object");
    CLI::App* sub = app.get_subcommands().front();
    const std::string cmd = sub->get_name();
    command = cmd;
    doc["command"] = cmd;
    if (!out.empty()) doc["out"] = out;
    out_dir = doc.value("out", json("out")).is_string() ? doc.value("out", std::string("out")) : "";
    if (!format.empty()) doc["format"] = format;
    if (seedless) doc["seedless"] = true;
    if (!tol.empty()) doc["tol"] = parse_number(tol, "tol");
    const std::string prefix = cmd + "/";
    for (const auto& [k, r] : raw) {
      if (k.rfind(prefix, 0) != 0 || sub->count(r.flag) == 0) continue;
      const std::string& v = r.value;
      const std::string key = k.substr(prefix.size());
      if (key == "metric") doc["metric"] = metric_argument(v);
      else if (key == "v_grid") doc["v_grid"] = v.find(':') != std::string::npos ? json(v) : list_argument(v, key);
      else if (key == "from") {
        json arr = json::array();
        std::stringstream ss(v);
        for (std::string p; std::getline(ss, p, ',');) arr.push_back(p);
        doc["from"] = arr;
      } else if (key == "s0" || key == "t_max" || key == "samples" || key == "jobs")
        doc[key] = parse_number(v, key);
      else doc[key] = list_argument(v, key);
    }
    const RunConfig c = parse_config(doc);
    return run(c, std::cerr);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    if (!out_dir.empty()) {
      std::error_code ec;
      fs::create_directories(out_dir, ec);
      if (!ec)
        io::write_json(fs::path(out_dir) / "summary.json",
                       {{"command", command}, {"status", "config-error"}, {"error", error_json("config", e)},
                        {"passed", false}});
    }
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace imcf::cli
