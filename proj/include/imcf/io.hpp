#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "imcf/flow.hpp"
#include "imcf/geometry.hpp"
#include "imcf/isoperimetry.hpp"
#include "imcf/regsolver.hpp"
#include "json.hpp"

namespace imcf::io {

using json = nlohmann::json;

/// {"preset": name, "params": {..}} or {"tabulated": {"s","A","R"}, "asymptotically_flat": bool}.
RadialMetric metric_from_json(const json& doc);
json metric_to_json(const RadialMetric& metric);

/// %.17g
std::string fmt(double x);

std::string profile_csv(const FlowProfile& profile);
json profile_json(const FlowProfile& profile);
json jumps_json(const FlowProfile& profile);

std::string solution_csv(const SolverResult& result);
json solution_json(const SolverResult& result);
json convergence_json(const ConvergenceReport& report);
json barrier_json(const BarrierReport& report);

std::string bound_csv(const std::vector<BoundReport>& reports);
json bound_json(const std::vector<BoundReport>& reports);

std::string iso_csv(const IsoProfile& iso);
json iso_json(const IsoProfile& iso);

json af_json(const AFDecayReport& report);
json rigidity_json(const RigidityReport& report);
json volume_growth_json(const VolumeGrowthReport& report);
json lipschitz_json(const LipschitzReport& report);
json geroch_json(const GerochReport& report);
json monotonicity_json(const MonotonicityReport& report);
json foliation_json(const ExteriorFoliationReport& report);

void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const json& doc);
json read_json(const std::filesystem::path& path);

/// 64-bit FNV-1a, lower-case hex.
std::string fnv1a_hex(const std::string& text);

}  // namespace imcf::io
