#pragma once

// Result reporting: Gantt renderings and personnel-availability sweeps.

#include <optional>
#include <string>
#include <vector>

#include "upms/core.hpp"
#include "upms/json_io.hpp"
#include "upms/tssa.hpp"

namespace upms {

/// One row per machine, then one per personnel; periods laid end to end as
/// labeled bands; jobs as boxes, setups as hatched boxes.
std::string gantt_svg(const Instance& instance, const Schedule& schedule);
std::string gantt_text(const Instance& instance, const Schedule& schedule);

/// Availability edits applied to a copy of the instance. end_times[k-1][t-1]
/// replaces End of personnel k in period t; start_times likewise, when given.
struct Scenario {
  std::string name;
  std::vector<std::vector<Minutes>> end_times;
  std::vector<std::vector<Minutes>> start_times;
};

/// Reads `[{"name": ..., "end_times": [[...], ...]}, ...]`.
std::vector<Scenario> scenarios_from_json(const Json& json);

/// Throws std::invalid_argument when the scenario does not fit the
/// instance or produces an invalid window.
Instance apply_scenario(const Instance& instance, const Scenario& scenario);

struct SweepRow {
  std::string name;
  /// Personnel work days per period, summed over personnel.
  std::vector<double> weekly_work_days;
  double total_work_days = 0;
  double step1_seconds = 0;
  double step2_seconds = 0;
  SolveStatus status = SolveStatus::kAwaitingSolution;
  bool infeasible = false;
  Minutes production = 0;
  Minutes available = 0;
  /// Against the base row; empty for the base row itself or when either
  /// side is infeasible.
  std::optional<Minutes> increase;
  double utilization = 0;
};

/// Solves the unmodified instance as "base", then every scenario, in file
/// order. Up to `parallel` solves run at once.
std::vector<SweepRow> run_sweep(const Instance& instance,
                                const std::vector<Scenario>& scenarios,
                                const SolveConfig& config, int parallel = 1);

std::string sweep_csv(const std::vector<SweepRow>& rows);
Json sweep_json(const std::vector<SweepRow>& rows);

}  // namespace upms
