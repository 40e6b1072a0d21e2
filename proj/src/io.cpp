#include "imcf/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "imcf/errors.hpp"

namespace imcf::io {

namespace {

std::vector<double> number_array(const json& doc, const std::string& key, const std::string& field) {
  if (!doc.contains(key) || !doc[key].is_array()) throw ConfigError(field, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& x : doc[key]) {
    if (!x.is_number()) throw ConfigError(field, "expected an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace

RadialMetric metric_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("metric", "expected a JSON object");
  for (const auto& [key, _] : doc.items())
    if (key != "preset" && key != "params" && key != "tabulated" && key != "asymptotically_flat" &&
        key != "name")
      throw ConfigError("metric." + key, "unknown key");
  const bool has_preset = doc.contains("preset");
  const bool has_tab = doc.contains("tabulated");
  if (has_preset == has_tab) throw ConfigError("metric", "exactly one of preset/tabulated must be given");

  if (has_preset) {
    if (!doc["preset"].is_string()) throw ConfigError("preset", "expected a string");
    std::string name = doc["preset"].get<std::string>();
    if (name == "schwarzschild") name = "schwarzschild-areal";
    std::map<std::string, double> params;
    if (doc.contains("params")) {
      if (!doc["params"].is_object()) throw ConfigError("params", "expected an object");
      for (const auto& [k, v] : doc["params"].items()) {
        if (!v.is_number()) throw ConfigError("params." + k, "expected a number");
        params[k] = v.get<double>();
      }
    }
    return make_preset(name, params);
  }
  if (doc.contains("params")) throw ConfigError("params", "only valid with a preset");
  const json& tab = doc["tabulated"];
  if (!tab.is_object()) throw ConfigError("tabulated", "expected an object");
  for (const auto& [key, _] : tab.items())
    if (key != "s" && key != "A" && key != "R") throw ConfigError("tabulated." + key, "unknown key");
  const bool af = doc.value("asymptotically_flat", false);
  const std::string name = doc.value("name", std::string("tabulated"));
  return make_tabulated(number_array(tab, "s", "tabulated.s"), number_array(tab, "A", "tabulated.A"),
                        number_array(tab, "R", "tabulated.R"), af, name);
}

json metric_to_json(const RadialMetric& metric) {
  json j;
  j["name"] = metric.name();
  j["kind"] = metric.kind() == RadialMetric::Kind::Preset      ? "preset"
              : metric.kind() == RadialMetric::Kind::Tabulated ? "tabulated"
                                                               : "glued";
  j["params"] = metric.params();
  j["s_min"] = metric.s_min();
  j["s_max"] = metric.s_max();
  j["asymptotically_flat"] = metric.asymptotically_flat();
  return j;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string profile_csv(const FlowProfile& profile) {
  std::ostringstream os;
  os << "t,s,B,m,v,H\n";
  for (const auto& p : profile.samples)
    os << fmt(p.t) << ',' << fmt(p.s) << ',' << fmt(p.B) << ',' << fmt(p.m) << ',' << fmt(p.v) << ','
       << fmt(p.H) << '\n';
  return os.str();
}

json profile_json(const FlowProfile& profile) {
  json rows = json::array();
  for (const auto& p : profile.samples)
    rows.push_back({{"t", p.t}, {"s", p.s}, {"B", p.B}, {"m", p.m}, {"v", p.v}, {"H", p.H}});
  return {{"start", profile.start},
          {"flow_start", profile.flow_start},
          {"t_max", profile.t_max},
          {"truncated", profile.truncated},
          {"samples", rows},
          {"jumps", jumps_json(profile)}};
}

json jumps_json(const FlowProfile& profile) {
  json arr = json::array();
  for (const auto& j : profile.jumps)
    arr.push_back({{"t1", j.t1},
                   {"s_before", j.s_before},
                   {"s_after", j.s_after},
                   {"v_before", j.v_before},
                   {"v_after", j.v_after},
                   {"initial", j.initial}});
  return arr;
}

std::string solution_csv(const SolverResult& result) {
  std::ostringstream os;
  os << "s,u\n";
  for (std::size_t i = 0; i < result.s.size(); ++i) os << fmt(result.s[i]) << ',' << fmt(result.u[i]) << '\n';
  return os.str();
}

json solution_json(const SolverResult& result) {
  return {{"s", result.s},
          {"u", result.u},
          {"residual_norm", result.residual_norm},
          {"newton_iterations", result.newton_iterations},
          {"converged", result.converged},
          {"message", result.message}};
}

json convergence_json(const ConvergenceReport& report) {
  json stages = json::array();
  for (const auto& st : report.stages) {
    json s = {{"epsilon", st.stage.epsilon},
              {"L", st.stage.L},
              {"n", st.stage.n},
              {"sL", st.sL},
              {"newton_iterations", st.newton_iterations},
              {"residual_norm", st.residual_norm},
              {"converged", st.converged},
              {"warm_started", st.warm_started},
              {"core_error", st.core_error},
              {"core_points", st.core_points}};
    s["successive_distance"] = st.successive_distance < 0.0 ? json(nullptr) : json(st.successive_distance);
    stages.push_back(s);
  }
  return {{"core_level", report.core_level},
          {"stages", stages},
          {"error_monotone", report.error_monotone},
          {"distance_monotone", report.distance_monotone},
          {"passed", report.passed}};
}

json barrier_json(const BarrierReport& r) {
  return {{"sufficient_range", r.sufficient_range},
          {"subsolution", r.subsolution},
          {"dominated", r.dominated},
          {"holds", r.holds},
          {"c1_fit", r.c1_fit},
          {"c_barrier", r.c_barrier},
          {"c2", r.c2},
          {"min_operator", r.min_operator},
          {"worst_violation", r.worst_violation},
          {"level_lo", r.level_lo},
          {"level_hi", r.level_hi},
          {"points", r.points},
          {"note", r.note}};
}

std::string bound_csv(const std::vector<BoundReport>& reports) {
  std::ostringstream os;
  os << "v,B,rhs,classical,slack,verdict\n";
  for (const auto& r : reports)
    os << fmt(r.v) << ',' << fmt(r.B) << ',' << fmt(r.rhs) << ',' << fmt(r.classical) << ','
       << fmt(r.slack) << ',' << to_string(r.verdict) << '\n';
  return os.str();
}

json bound_json(const std::vector<BoundReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports)
    arr.push_back({{"v", r.v},
                   {"B", r.B},
                   {"rhs", r.rhs},
                   {"classical", r.classical},
                   {"slack", r.slack},
                   {"slack_error", r.slack_error},
                   {"verdict", to_string(r.verdict)}});
  return arr;
}

std::string iso_csv(const IsoProfile& iso) {
  std::ostringstream os;
  os << "v,A,A_ext,candidate\n";
  for (std::size_t i = 0; i < iso.v_grid.size(); ++i)
    os << fmt(iso.v_grid[i]) << ',' << fmt(iso.A[i]) << ',' << fmt(iso.A_ext[i]) << ','
       << iso.candidate[i] << '\n';
  return os.str();
}

json iso_json(const IsoProfile& iso) {
  return {{"v", iso.v_grid},
          {"A", iso.A},
          {"A_ext", iso.A_ext},
          {"candidate", iso.candidate},
          {"candidate_ext", iso.candidate_ext},
          {"base", iso.base}};
}

json af_json(const AFDecayReport& r) {
  json samples = json::array();
  for (const auto& s : r.samples)
    samples.push_back({{"r", s.r}, {"sigma", s.sigma}, {"r_dsigma", s.r_dsigma}, {"r2_ddsigma", s.r2_ddsigma}});
  return {{"passes", r.passes},
          {"witnessed_constant", r.witnessed_constant},
          {"inner_constant", r.inner_constant},
          {"outer_constant", r.outer_constant},
          {"samples", samples}};
}

json rigidity_json(const RigidityReport& r) {
  return {{"equality_found", r.equality_found},
          {"equality_volume", r.equality_volume},
          {"min_relative_gap", r.min_relative_gap},
          {"max_abs_scalar_curvature", r.max_abs_scalar_curvature},
          {"abs_adm_mass", r.abs_adm_mass},
          {"flat", r.flat},
          {"consistent", r.consistent},
          {"flow_min_gap", r.flow_min_gap}};
}

json volume_growth_json(const VolumeGrowthReport& r) {
  return {{"max_deviation", r.max_deviation},
          {"checked", r.checked},
          {"unresolved", r.unresolved},
          {"insufficient_segments", r.insufficient_segments},
          {"flags", r.flags}};
}

json lipschitz_json(const LipschitzReport& r) {
  return {{"holds", r.holds},
          {"worst_margin", r.worst_margin},
          {"max_equality_gap", r.max_equality_gap},
          {"checked", r.checked},
          {"unresolved", r.unresolved},
          {"jump_intervals", r.jump_intervals},
          {"flags", r.flags}};
}

json geroch_json(const GerochReport& r) {
  return {{"hypothesis_met", r.hypothesis_met},
          {"min_scalar_curvature", r.min_scalar_curvature},
          {"nondecreasing", r.nondecreasing},
          {"min_increment", r.min_increment},
          {"final_mass", r.final_mass}};
}

json monotonicity_json(const MonotonicityReport& r) {
  return {{"passed", r.passed}, {"worst_decrement", r.worst_decrement}, {"worst_index", r.worst_index}};
}

json foliation_json(const ExteriorFoliationReport& r) {
  json j = {{"s_ext", r.s_ext}, {"positive", r.positive}};
  j["first_violation"] = r.positive ? json(nullptr) : json(r.first_violation);
  return j;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write " + path.string());
  os << text;
  if (!os) throw Error("write failed: " + path.string());
}

void write_json(const std::filesystem::path& path, const json& doc) { write_text(path, doc.dump(2) + "\n"); }

json read_json(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError(path.string(), "cannot open file");
  try {
    return json::parse(is);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string(), std::string("malformed JSON: ") + e.what());
  }
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

}  // namespace imcf::io
