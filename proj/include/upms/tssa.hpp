#pragma once

// Two-step solution approach: maximize the accepted jobs, then (only when
// every job fits) minimize total production time from that warm start.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "upms/core.hpp"
#include "upms/solve_report.hpp"

namespace upms {

enum class Backend { kNative, kExport };

struct SolveConfig {
  double step1_time_limit = 2700.0;
  double step2_time_limit = 1800.0;
  double step2_gap_target = 0.05;
  Backend backend = Backend::kNative;
  /// Move evaluations for the native local search.
  std::int64_t search_budget = 200000;
  /// Export backend: where step1.lp, step2.lp and step2.mst are written.
  std::filesystem::path export_dir = ".";
  /// Export backend: solver output for each step, once available.
  std::optional<std::filesystem::path> step1_solution;
  std::optional<std::filesystem::path> step2_solution;
};

/// Empty when the configuration is usable.
std::vector<std::string> validate_config(const SolveConfig& config);

/// Sum over jobs of the cheapest processing plus incoming setup.
Minutes production_lower_bound(const Instance& instance);

/// Native backend: exact oracle inside its guard, heuristics beyond it.
/// Export backend: writes the LP files and reads solution files given in
/// the config; reports AwaitingSolution while a step's solution is
/// missing. Throws std::invalid_argument on a bad config or instance and
/// ScheduleError when a solution file decodes to an infeasible schedule.
SolveReport tssa_solve(const Instance& instance, const SolveConfig& config);

}  // namespace upms
