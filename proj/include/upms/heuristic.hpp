#pragma once

// Native construction and improvement heuristics for instances beyond the
// exact oracle's reach.

#include <cstdint>

#include "upms/core.hpp"
#include "upms/oracle.hpp"

namespace upms {

/// Machine runs of a schedule (empty runs dropped), canonically ordered.
std::vector<MachineRun> machine_runs(const Schedule& schedule, const Instance& instance);

/// Production time of a run layout with derived successors.
Minutes layout_cost(const Instance& instance, const std::vector<MachineRun>& runs);

/// Inserts jobs by nondecreasing delivery period (larger minimum processing
/// time first on ties) at the cheapest slot that keeps every period
/// staffable; jobs without such a slot are left out.
Schedule greedy_construct(const Instance& instance);

/// First-improvement descent over swap, relocate and 2-opt moves with the
/// accepted job set frozen. `budget` counts candidate moves examined.
Schedule local_search(const Instance& instance, const Schedule& schedule,
                      std::int64_t budget);

}  // namespace upms
