#pragma once

// Forward timing of a single run and the per-period search that assigns
// personnel (and their visiting order) to a fixed set of runs.

#include <cstdint>
#include <optional>
#include <vector>

#include "upms/core.hpp"

namespace upms {

struct RunTiming {
  std::vector<Minutes> starts;
  std::vector<Minutes> ends;
  /// Personnel end: last job end plus its changeover toward the successor.
  Minutes personnel_end = 0;
};

/// Earliest job times of `jobs` on `machine` in `period` when personnel
/// arrive at `personnel_start`.
RunTiming time_run(const Instance& instance, int machine, int period,
                   const std::vector<int>& jobs, int successor,
                   Minutes personnel_start);

/// True when every job meets its delivery bound and the run ends within
/// `limit` (the personnel window end, capped by AVB).
bool run_fits(const Instance& instance, int period, const std::vector<int>& jobs,
              const RunTiming& timing, Minutes limit);

struct StaffRun {
  int machine = 0;
  int rank = 0;  // 1-based rank of the position within the machine
  std::vector<int> jobs;
  int successor = kDummyJob;
};

struct Staffing {
  /// personnel[r] attends runs[r].
  std::vector<int> personnel;
  /// Run indices in visiting order, per personnel (index k - 1).
  std::vector<std::vector<int>> routes;
  std::vector<Minutes> personnel_start;
  std::vector<Minutes> personnel_end;
};

/// Finds personnel and routes so that every run of `period` is timed
/// feasibly, or nullopt. Runs of one machine must occupy ranks 1..c. The
/// search is complete; `node_budget`, when given, is decremented per node
/// and the search gives up (nullopt) once it reaches zero.
std::optional<Staffing> staff_period(const Instance& instance, int period,
                                     const std::vector<StaffRun>& runs,
                                     std::int64_t* node_budget = nullptr);

}  // namespace upms
