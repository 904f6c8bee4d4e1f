#pragma once

#include <optional>
#include <string>
#include <vector>

#include "csf/geometry.hpp"

namespace csf {

// One run's result, serialized as JSON (schema "csf-result-v1"). Timing
// fields are the only part expected to differ between identically-seeded
// invocations.
struct ResultRecord {
  std::string instance;
  std::uint64_t seed = 0;
  std::string mode;
  std::string legalizer;
  std::string kernel;
  Outline outline;
  bool legal = false;
  double hpwl = 0.0;
  double hpwl_before_compress = 0.0;
  double t_g = 0.0, t_l = 0.0, t_w = 0.0;
  int restarts = 0;
  std::vector<std::string> module_names;
  std::vector<double> widths, heights; // unrotated dims, for drawing
  Placement placement;
};

// Throws on an empty placement or name/coordinate length mismatch.
std::string emit_result_json(const ResultRecord& record);
ResultRecord read_result_json(const std::string& json_text);

// Standalone SVG: outline rectangle plus every module with its name.
std::string emit_result_svg(const ResultRecord& record);

struct RunStats {
  bool legal = false;
  double hpwl = 0.0;
  double t_g = 0.0, t_l = 0.0, t_w = 0.0;
};

struct AggregateStats {
  int runs = 0;
  int successes = 0;
  double sr_percent = 0.0;
  // Wirelength statistics over successful runs only; absent when none.
  std::optional<double> hpwl_mean, hpwl_min, hpwl_sd;
  double mean_t_g = 0.0, mean_t_l = 0.0, mean_t_w = 0.0; // over all runs
};

AggregateStats aggregate(const std::vector<RunStats>& records);

std::string aggregate_json(const AggregateStats& agg, const std::string& instance,
                           const std::string& mode, const std::string& legalizer);

} // namespace csf
