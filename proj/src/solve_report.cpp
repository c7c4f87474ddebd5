#include "upms/solve_report.hpp"

#include <algorithm>

namespace upms {

std::string_view status_name(SolveStatus status) {
  switch (status) {
    case SolveStatus::kAllScheduled:
      return "AllScheduled";
    case SolveStatus::kInfeasibleSubset:
      return "InfeasibleSubset";
    case SolveStatus::kTimedOut:
      return "TimedOut";
    case SolveStatus::kAwaitingSolution:
      return "AwaitingSolution";
  }
  return "TimedOut";
}

double relative_gap(Minutes incumbent, Minutes bound) {
  const double diff = static_cast<double>(incumbent - bound);
  return std::max(0.0, diff / static_cast<double>(std::max<Minutes>(incumbent, 1)));
}

Json solve_report_to_json(const SolveReport& report) {
  return {
      {"status", std::string(status_name(report.status))},
      {"accepted_count", report.accepted_count},
      {"objective",
       {{"total", report.objective.total},
        {"processing", report.objective.processing},
        {"setup", report.objective.setup}}},
      {"step1_objective", report.step1_objective.total},
      {"bound", report.bound},
      {"gap", report.gap},
      {"step1_seconds", report.step1_seconds},
      {"step2_seconds", report.step2_seconds},
      {"step1_proven", report.step1_proven},
      {"step2_run", report.step2_run},
      {"backend", report.backend},
      {"artifacts", report.artifacts},
      {"schedule", schedule_to_json(report.schedule)},
  };
}

}  // namespace upms
