#include "upms/tssa.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "upms/heuristic.hpp"
#include "upms/json_io.hpp"
#include "upms/lp_format.hpp"
#include "upms/milp.hpp"
#include "upms/oracle.hpp"
#include "upms/validator.hpp"

namespace upms {

namespace {

using Clock = std::chrono::steady_clock;

double Since(Clock::time_point begin) {
  return std::chrono::duration<double>(Clock::now() - begin).count();
}

void Finish(const Instance& in, SolveReport& r) {
  r.accepted_count = static_cast<int>(r.schedule.accepted.size());
  r.objective = total_production_time(in, r.schedule);
  if (r.status == SolveStatus::kAllScheduled) {
    r.bound = std::min(r.bound, r.objective.total);
    r.gap = relative_gap(r.objective.total, r.bound);
  } else {
    r.bound = 0;
    r.gap = 0.0;
  }
}

SolveReport SolveExact(const Instance& in, const SolveConfig& config) {
  SolveReport report;
  report.backend = "native-oracle";
  const int n = in.job_count();

  const SolveReport step1 =
      exact_solve(in, Mode::kStep1, {config.step1_time_limit});
  report.step1_seconds = step1.step1_seconds;
  report.step1_proven = step1.step1_proven;
  report.schedule = step1.schedule;
  report.step1_schedule = step1.schedule;
  report.step1_objective = step1.objective;
  if (step1.status == SolveStatus::kTimedOut) {
    report.status = SolveStatus::kTimedOut;
    Finish(in, report);
    return report;
  }
  if (step1.accepted_count < n) {
    report.status = SolveStatus::kInfeasibleSubset;
    Finish(in, report);
    return report;
  }

  report.step2_run = true;
  const SolveReport step2 =
      exact_solve(in, Mode::kStep2, {config.step2_time_limit});
  report.step2_seconds = step2.step2_seconds;
  report.status = SolveStatus::kAllScheduled;
  report.bound = production_lower_bound(in);
  // A timed-out step 2 still hands back its incumbent, if it beats the
  // warm start; only the bound is weaker.
  const bool complete = step2.accepted_count == n;
  if (complete && step2.objective.total <= step1.objective.total) {
    report.schedule = step2.schedule;
  }
  if (step2.status == SolveStatus::kAllScheduled) report.bound = step2.objective.total;
  Finish(in, report);
  return report;
}

SolveReport SolveHeuristic(const Instance& in, const SolveConfig& config) {
  SolveReport report;
  report.backend = "native-heuristic";
  const auto begin = Clock::now();
  report.schedule = greedy_construct(in);
  report.step1_schedule = report.schedule;
  report.step1_objective = total_production_time(in, report.schedule);
  report.step1_seconds = Since(begin);
  if (static_cast<int>(report.schedule.accepted.size()) < in.job_count()) {
    report.status = SolveStatus::kInfeasibleSubset;
    Finish(in, report);
    return report;
  }
  report.step2_run = true;
  const auto begin2 = Clock::now();
  report.schedule = local_search(in, report.schedule, config.search_budget);
  report.step2_seconds = Since(begin2);
  report.status = SolveStatus::kAllScheduled;
  report.bound = production_lower_bound(in);
  Finish(in, report);
  return report;
}

Schedule ReadSolution(const Instance& in, const ModelIR& model,
                      const std::filesystem::path& path, Mode mode) {
  const ImportedSolution sol = import_solution(read_text_file(path), model);
  Schedule s = decode_assignment(in, sol.values);
  const ViolationReport v = validate_schedule(in, s, mode);
  if (!v.is_feasible()) {
    throw ScheduleError(path.string() + " decodes to an infeasible schedule:\n" +
                        explain(v));
  }
  return s;
}

SolveReport SolveExport(const Instance& in, const SolveConfig& config) {
  SolveReport report;
  report.backend = "export";
  std::filesystem::create_directories(config.export_dir);

  const auto begin = Clock::now();
  const ModelIR step1 = build_step1_model(in);
  const auto lp1 = config.export_dir / "step1.lp";
  write_text_file(lp1, export_lp(step1));
  report.artifacts.push_back(lp1.string());
  if (!config.step1_solution) {
    report.status = SolveStatus::kAwaitingSolution;
    report.step1_seconds = Since(begin);
    return report;
  }
  report.schedule = ReadSolution(in, step1, *config.step1_solution, Mode::kStep1);
  report.step1_schedule = report.schedule;
  report.step1_objective = total_production_time(in, report.schedule);
  report.step1_seconds = Since(begin);
  // The external solver is trusted to have proven its step-1 optimum.
  report.step1_proven = true;
  if (static_cast<int>(report.schedule.accepted.size()) < in.job_count()) {
    report.status = SolveStatus::kInfeasibleSubset;
    Finish(in, report);
    return report;
  }

  const auto begin2 = Clock::now();
  ModelIR step2 = build_step2_model(in);
  step2.warm_start = encode_schedule(in, report.schedule);
  const auto lp2 = config.export_dir / "step2.lp";
  const auto mst = config.export_dir / "step2.mst";
  write_text_file(lp2, export_lp(step2));
  write_text_file(mst, write_solution(step2, step2.warm_start));
  report.artifacts.push_back(lp2.string());
  report.artifacts.push_back(mst.string());
  report.bound = production_lower_bound(in);
  if (!config.step2_solution) {
    report.status = SolveStatus::kAwaitingSolution;
    report.step2_seconds = Since(begin2);
    Finish(in, report);
    return report;
  }
  report.step2_run = true;
  Schedule s2 = ReadSolution(in, step2, *config.step2_solution, Mode::kStep2);
  if (total_production_time(in, s2).total <= report.step1_objective.total) {
    report.schedule = std::move(s2);
  }
  report.step2_seconds = Since(begin2);
  report.status = SolveStatus::kAllScheduled;
  Finish(in, report);
  return report;
}

}  // namespace

std::vector<std::string> validate_config(const SolveConfig& c) {
  std::vector<std::string> out;
  if (!(c.step1_time_limit > 0)) out.push_back("step-1 time limit must be positive");
  if (!(c.step2_time_limit > 0)) out.push_back("step-2 time limit must be positive");
  if (!(c.step2_gap_target >= 0 && c.step2_gap_target < 1)) {
    out.push_back("gap target must lie in [0, 1)");
  }
  if (c.search_budget < 0) out.push_back("search budget must be nonnegative");
  if (c.step2_solution && !c.step1_solution) {
    out.push_back("a step-2 solution needs the step-1 solution it was seeded from");
  }
  return out;
}

Minutes production_lower_bound(const Instance& in) {
  Minutes total = 0;
  for (const Job& job : in.jobs) {
    Minutes best = -1;
    for (const auto& [l, p] : job.processing) {
      Minutes incoming = in.initial_setup(job.id, l);
      for (int j = 1; j <= in.job_count(); ++j) {
        if (j != job.id) incoming = std::min(incoming, in.setup(j, job.id, l));
      }
      if (best < 0 || p + incoming < best) best = p + incoming;
    }
    total += std::max<Minutes>(best, 0);
  }
  return total;
}

SolveReport tssa_solve(const Instance& instance, const SolveConfig& config) {
  const auto defects = validate_config(config);
  if (!defects.empty()) {
    std::string msg = "invalid solve config:";
    for (const auto& d : defects) msg += "\n  " + d;
    throw std::invalid_argument(msg);
  }
  require_valid_instance(instance);
  if (config.backend == Backend::kExport) return SolveExport(instance, config);
  if (within_oracle_guard(instance)) return SolveExact(instance, config);
  return SolveHeuristic(instance, config);
}

}  // namespace upms
