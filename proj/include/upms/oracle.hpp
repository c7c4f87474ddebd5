#pragma once

// Exhaustive solver for tiny instances, and the earliest-start timer every
// solver uses to turn a combinatorial skeleton into a timed schedule.

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "upms/core.hpp"
#include "upms/solve_report.hpp"
#include "upms/validator.hpp"

namespace upms {

struct SkeletonRun {
  int machine = 0;
  int position = 0;
  int period = 0;
  std::vector<int> jobs;
  /// Attending personnel; when absent it is the personnel whose route
  /// visits this position in this period (0 if none).
  std::optional<int> personnel;
};

struct Skeleton {
  std::vector<SkeletonRun> runs;
  std::vector<PersonnelRoute> routes;
  /// Successor per run; derived from the run order when absent.
  std::optional<std::vector<int>> successors;
  /// Carried-over links; derived when absent.
  std::optional<std::vector<AuxLink>> aux_links;
};

/// Componentwise-minimal start times for the skeleton, or nullopt when no
/// timing satisfies release and delivery bounds, setup gaps, personnel
/// windows and the run ordering (including cyclic orderings).
std::optional<Schedule> earliest_start_assignment(const Instance& instance,
                                                  const Skeleton& skeleton);

/// A machine run before personnel and times are fixed.
struct MachineRun {
  int machine = 0;
  int period = 0;
  int rank = 0;
  std::vector<int> jobs;

  auto operator<=>(const MachineRun&) const = default;
};

/// Successor of every run: the first job of the machine's next run in
/// (period, rank) order, or the dummy job.
std::vector<int> run_successors(const std::vector<MachineRun>& runs);

/// Staffs every period with staff_period and times the result with
/// earliest_start_assignment. nullopt when some period cannot be staffed
/// (or its search exhausts `node_budget`).
std::optional<Schedule> realize_runs(const Instance& instance,
                                     const std::vector<MachineRun>& runs,
                                     std::int64_t* node_budget = nullptr);

struct OracleLimits {
  double time_limit_seconds = std::numeric_limits<double>::infinity();
};

class OracleRefused : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Instance sizes the oracle accepts.
struct OracleGuard {
  static constexpr int kMaxJobs = 7;
  static constexpr int kMaxMachines = 3;
  static constexpr int kMaxPeriods = 2;
  static constexpr int kMaxPositions = 2;
};

bool within_oracle_guard(const Instance& instance);

/// Global optimum by enumeration: step 2 minimizes total production time
/// with every job scheduled (falling back to step 1 when impossible); step
/// 1 maximizes accepted jobs, ties broken by production time. Equal optima
/// resolve to the lexicographically smallest (machine, position, period,
/// job sequence) list. Throws OracleRefused outside the guard.
SolveReport exact_solve(const Instance& instance, Mode mode,
                        const OracleLimits& limits = {});

}  // namespace upms
