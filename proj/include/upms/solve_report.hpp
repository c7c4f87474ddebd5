#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "upms/core.hpp"
#include "upms/json_io.hpp"

namespace upms {

enum class SolveStatus {
  kAllScheduled,
  kInfeasibleSubset,
  kTimedOut,
  /// Export backend: model files written, waiting for solver output.
  kAwaitingSolution,
};

std::string_view status_name(SolveStatus status);

struct SolveReport {
  SolveStatus status = SolveStatus::kTimedOut;
  Schedule schedule;
  /// The step-1 schedule that seeded step 2 (equal to `schedule` when step
  /// 2 did not run).
  Schedule step1_schedule;
  ProductionTime step1_objective;
  int accepted_count = 0;
  ProductionTime objective;
  /// Best proven lower bound on the step-2 objective.
  Minutes bound = 0;
  double gap = 0.0;
  double step1_seconds = 0.0;
  double step2_seconds = 0.0;
  /// Step 1 reached a proven maximum.
  bool step1_proven = false;
  bool step2_run = false;
  std::string backend;
  std::vector<std::string> artifacts;
};

/// (incumbent - bound) / max(incumbent, 1), never negative.
double relative_gap(Minutes incumbent, Minutes bound);

Json solve_report_to_json(const SolveReport& report);

}  // namespace upms
