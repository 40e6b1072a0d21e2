#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace imcf::cli {

struct RunConfig {
  std::string command;
  nlohmann::json metric;  ///< metric document, parameter shortcuts merged in
  std::optional<double> s0;
  std::optional<double> t_max;
  int samples = 512;
  std::vector<double> epsilon;
  std::vector<double> L;  ///< empty: auto level per stage
  std::vector<int> n;
  std::vector<double> v_grid;
  std::optional<double> tol;
  std::string format = "both";
  std::string out = "out";
  std::map<std::string, std::vector<double>> sweep_params;  ///< preset parameter lists (m, b, ...)
  std::vector<std::string> inputs;                         ///< report: directories to scan
  int jobs = 0;                                            ///< sweep worker threads, 0 = hardware
};

/// Validates a configuration document. Throws ConfigError naming the field.
RunConfig parse_config(const nlohmann::json& doc);

/// Runs a validated configuration. Returns 0 iff every verdict passes.
int run(const RunConfig& config, std::ostream& log);

/// Full command-line entry point.
int main(int argc, char** argv);

}  // namespace imcf::cli
