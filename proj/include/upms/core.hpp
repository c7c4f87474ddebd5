#pragma once

// Domain model for unrelated parallel machine scheduling with sequence- and
// machine-dependent setups and a limited, shift-bound personnel pool.
//
// All times are integer minutes. Entity ids (jobs, machines, personnel,
// periods) are 1-based; job id 0 is the dummy job that terminates a
// machine's production sequence.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace upms {

using Minutes = std::int64_t;

inline constexpr int kDummyJob = 0;

/// Minutes in one working day; used only for reporting work days.
inline constexpr Minutes kWorkdayMinutes = 450;

struct Period {
  int index = 0;
  Minutes available_time = 0;
};

struct Machine {
  int id = 0;
  int positions_per_period = 2;
  /// Changeover charged after a machine's final job when no per-job
  /// terminal setup is given.
  std::optional<Minutes> final_cleaning;
};

struct Job {
  int id = 0;
  /// machine id -> processing minutes; a missing machine is ineligible.
  std::map<int, Minutes> processing;
  int release_period = 1;
  Minutes release_time = 0;
  int delivery_period = 1;
  Minutes delivery_time = 0;
};

struct Window {
  Minutes start = 0;
  Minutes end = 0;

  Minutes length() const { return end > start ? end - start : 0; }
};

struct Personnel {
  int id = 0;
  /// windows[t - 1] is the working window in period t.
  std::vector<Window> windows;
};

/// Dense setup tables indexed by 1-based job and machine ids.
class SetupMatrix {
 public:
  SetupMatrix() = default;
  SetupMatrix(int jobs, int machines);

  int jobs() const { return jobs_; }
  int machines() const { return machines_; }

  Minutes between(int from, int to, int machine) const {
    return between_[BetweenIndex(from, to, machine)];
  }
  void set_between(int from, int to, int machine, Minutes value) {
    between_[BetweenIndex(from, to, machine)] = value;
  }

  Minutes initial(int job, int machine) const {
    return initial_[PairIndex(job, machine)];
  }
  void set_initial(int job, int machine, Minutes value) {
    initial_[PairIndex(job, machine)] = value;
  }

  std::optional<Minutes> terminal(int job, int machine) const {
    return terminal_[PairIndex(job, machine)];
  }
  void set_terminal(int job, int machine, std::optional<Minutes> value) {
    terminal_[PairIndex(job, machine)] = value;
  }

  bool operator==(const SetupMatrix&) const = default;

 private:
  std::size_t BetweenIndex(int from, int to, int machine) const {
    return (static_cast<std::size_t>(machine - 1) * jobs_ + (from - 1)) *
               jobs_ +
           (to - 1);
  }
  std::size_t PairIndex(int job, int machine) const {
    return static_cast<std::size_t>(machine - 1) * jobs_ + (job - 1);
  }

  int jobs_ = 0;
  int machines_ = 0;
  std::vector<Minutes> between_;
  std::vector<Minutes> initial_;
  std::vector<std::optional<Minutes>> terminal_;
};

/// A complete problem instance. Treated as immutable once built.
struct Instance {
  std::vector<Period> periods;
  std::vector<Machine> machines;
  std::vector<Job> jobs;
  SetupMatrix setups;
  std::vector<Personnel> personnel;

  int job_count() const { return static_cast<int>(jobs.size()); }
  int machine_count() const { return static_cast<int>(machines.size()); }
  int period_count() const { return static_cast<int>(periods.size()); }
  int personnel_count() const { return static_cast<int>(personnel.size()); }

  Minutes avb(int period) const { return periods[period - 1].available_time; }
  const Job& job(int id) const { return jobs[id - 1]; }
  const Machine& machine(int id) const { return machines[id - 1]; }

  bool eligible(int job_id, int machine_id) const;
  std::optional<Minutes> processing(int job_id, int machine_id) const;
  /// Zero for ineligible pairs, mirroring P_il in the linear model.
  Minutes processing_or_zero(int job_id, int machine_id) const;

  Minutes setup(int from, int to, int machine_id) const {
    return setups.between(from, to, machine_id);
  }
  Minutes initial_setup(int job_id, int machine_id) const {
    return setups.initial(job_id, machine_id);
  }
  Minutes terminal_setup(int job_id, int machine_id) const;
  /// Setup charged after `from` when `to` follows it; `to == 0` is the
  /// terminal changeover.
  Minutes changeover(int from, int to, int machine_id) const {
    return to == kDummyJob ? terminal_setup(from, machine_id)
                           : setup(from, to, machine_id);
  }

  Window window(int personnel_id, int period) const {
    return personnel[personnel_id - 1].windows[period - 1];
  }

  /// Delivery bound of a job processed in `period` (DT_it).
  Minutes delivery_bound(int job_id, int period) const;

  // Positions are numbered globally, machine by machine.
  int position_count() const;
  int first_position(int machine_id) const;
  int position_id(int machine_id, int rank) const {
    return first_position(machine_id) + rank - 1;
  }
  int machine_of_position(int position) const;
  int rank_of_position(int position) const {
    return position - first_position(machine_of_position(position)) + 1;
  }
};

struct JobPlacement {
  int job = 0;
  int machine = 0;
  int position = 0;
  int period = 0;
  Minutes start = 0;
  Minutes end = 0;

  auto operator<=>(const JobPlacement&) const = default;
};

struct PositionRun {
  int machine = 0;
  int position = 0;
  int period = 0;
  std::vector<int> jobs;
  /// Job that follows the last job of this run on the same machine; 0 when
  /// this is the machine's final run.
  int successor = kDummyJob;
  /// 0 means no personnel attends the run.
  int personnel = 0;
  Minutes personnel_start = 0;
  Minutes personnel_end = 0;

  auto operator<=>(const PositionRun&) const = default;
};

struct PersonnelRoute {
  int personnel = 0;
  int period = 0;
  std::vector<int> positions;

  auto operator<=>(const PersonnelRoute&) const = default;
};

/// AuxVar_{h,l,v} = 1: the pending successor `job` of machine `machine` is
/// carried across idle period v + 1.
struct AuxLink {
  int job = 0;
  int machine = 0;
  int period = 0;

  auto operator<=>(const AuxLink&) const = default;
};

struct Schedule {
  std::vector<JobPlacement> placements;
  std::vector<PositionRun> runs;
  std::vector<PersonnelRoute> personnel_routes;
  std::vector<int> accepted;
  std::vector<AuxLink> aux_links;

  bool operator==(const Schedule&) const = default;
};

/// Sorts every list of `schedule` into canonical order.
void normalize(Schedule& schedule);

class ScheduleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProductionTime {
  Minutes total = 0;
  Minutes processing = 0;
  Minutes setup = 0;

  bool operator==(const ProductionTime&) const = default;
};

/// Objective of the minimization model: processing of every placement plus
/// sequence, initial and terminal setups of every run.
ProductionTime total_production_time(const Instance& instance,
                                     const Schedule& schedule);

/// Production time contributed by a single run (setups plus processing of
/// its jobs).
ProductionTime run_production_time(const Instance& instance,
                                   const PositionRun& run);

struct Utilization {
  /// busy[k - 1][t - 1]: minutes personnel k is attached to a run in t.
  std::vector<std::vector<Minutes>> busy;
  Minutes production = 0;
  Minutes available = 0;
  double ratio = 0.0;
};

Utilization personnel_utilization(const Instance& instance,
                                  const Schedule& schedule);

/// Total personnel window minutes over all periods.
Minutes total_available_time(const Instance& instance);

double utilization_ratio(Minutes production, Minutes available);

/// Percentage rounded half up, as shown in utilization tables.
int percent_half_up(double ratio);

/// Whether the "fewer personnel than machines" rule is reported. Solvers
/// and model builders accept instances outside that regime (e.g. one
/// personnel on one machine, or a fully staffed comparison instance).
enum class Regime { kEnforce, kRelaxed };

/// Structural defects of an instance; empty means every module may rely on
/// the instance invariants.
std::vector<std::string> validate_instance(const Instance& instance,
                                           Regime regime = Regime::kEnforce);

/// Throws std::invalid_argument listing the defects (regime relaxed).
void require_valid_instance(const Instance& instance);

/// Derived connectivity of machine runs ordered by (period, rank): the
/// successor each run must name, and the AuxVar links implied by idle
/// periods.
struct Connectivity {
  /// Same order as the input runs.
  std::vector<int> successors;
  std::vector<AuxLink> aux_links;
};

Connectivity derive_connectivity(const Instance& instance,
                                 const std::vector<PositionRun>& runs);

}  // namespace upms
