#include "upms/core.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <tuple>

namespace upms {

SetupMatrix::SetupMatrix(int jobs, int machines)
    : jobs_(jobs),
      machines_(machines),
      between_(static_cast<std::size_t>(jobs) * jobs * machines, 0),
      initial_(static_cast<std::size_t>(jobs) * machines, 0),
      terminal_(static_cast<std::size_t>(jobs) * machines) {}

bool Instance::eligible(int job_id, int machine_id) const {
  return job(job_id).processing.count(machine_id) > 0;
}

std::optional<Minutes> Instance::processing(int job_id, int machine_id) const {
  const auto& map = job(job_id).processing;
  auto it = map.find(machine_id);
  if (it == map.end()) return std::nullopt;
  return it->second;
}

Minutes Instance::processing_or_zero(int job_id, int machine_id) const {
  return processing(job_id, machine_id).value_or(0);
}

Minutes Instance::terminal_setup(int job_id, int machine_id) const {
  if (auto value = setups.terminal(job_id, machine_id)) return *value;
  return machine(machine_id).final_cleaning.value_or(0);
}

Minutes Instance::delivery_bound(int job_id, int period) const {
  const Job& j = job(job_id);
  if (period < j.delivery_period) return avb(period);
  if (period == j.delivery_period) return j.delivery_time;
  return 0;
}

int Instance::position_count() const {
  int count = 0;
  for (const Machine& m : machines) count += m.positions_per_period;
  return count;
}

int Instance::first_position(int machine_id) const {
  int first = 1;
  for (int l = 1; l < machine_id; ++l) first += machine(l).positions_per_period;
  return first;
}

int Instance::machine_of_position(int position) const {
  int next = 1;
  for (const Machine& m : machines) {
    next += m.positions_per_period;
    if (position < next) return m.id;
  }
  return 0;
}

void normalize(Schedule& schedule) {
  std::sort(schedule.placements.begin(), schedule.placements.end());
  std::sort(schedule.runs.begin(), schedule.runs.end(),
            [](const PositionRun& a, const PositionRun& b) {
              return std::tie(a.machine, a.period, a.position, a.jobs) <
                     std::tie(b.machine, b.period, b.position, b.jobs);
            });
  std::sort(schedule.personnel_routes.begin(), schedule.personnel_routes.end());
  std::sort(schedule.accepted.begin(), schedule.accepted.end());
  std::sort(schedule.aux_links.begin(), schedule.aux_links.end(),
            [](const AuxLink& a, const AuxLink& b) {
              return std::tie(a.machine, a.period, a.job) <
                     std::tie(b.machine, b.period, b.job);
            });
}

namespace {

void CheckJobMachine(const Instance& instance, int job, int machine,
                     const std::string& what) {
  if (job < 1 || job > instance.job_count() || machine < 1 ||
      machine > instance.machine_count()) {
    throw ScheduleError(what + " references unknown job " +
                        std::to_string(job) + " or machine " +
                        std::to_string(machine));
  }
  if (!instance.eligible(job, machine)) {
    throw ScheduleError(what + " places job " + std::to_string(job) +
                        " on ineligible machine " + std::to_string(machine));
  }
}

}  // namespace

ProductionTime run_production_time(const Instance& instance,
                                   const PositionRun& run) {
  ProductionTime out;
  if (run.jobs.empty()) return out;
  const int l = run.machine;
  for (int job : run.jobs) {
    CheckJobMachine(instance, job, l, "run");
    out.processing += *instance.processing(job, l);
  }
  out.setup += instance.initial_setup(run.jobs.front(), l);
  for (std::size_t k = 1; k < run.jobs.size(); ++k) {
    out.setup += instance.setup(run.jobs[k - 1], run.jobs[k], l);
  }
  if (run.successor < 0 || run.successor > instance.job_count()) {
    throw ScheduleError("run on machine " + std::to_string(l) +
                        " names unknown successor " +
                        std::to_string(run.successor));
  }
  out.setup += instance.changeover(run.jobs.back(), run.successor, l);
  out.total = out.processing + out.setup;
  return out;
}

ProductionTime total_production_time(const Instance& instance,
                                     const Schedule& schedule) {
  ProductionTime out;
  for (const JobPlacement& p : schedule.placements) {
    std::ostringstream what;
    what << "placement of job " << p.job << " (machine " << p.machine
         << ", position " << p.position << ", period " << p.period << ")";
    CheckJobMachine(instance, p.job, p.machine, what.str());
    out.processing += *instance.processing(p.job, p.machine);
  }
  for (const PositionRun& run : schedule.runs) {
    ProductionTime part = run_production_time(instance, run);
    out.setup += part.setup;
  }
  out.total = out.processing + out.setup;
  return out;
}

Minutes total_available_time(const Instance& instance) {
  Minutes total = 0;
  for (const Personnel& k : instance.personnel) {
    for (const Window& w : k.windows) total += w.length();
  }
  return total;
}

double utilization_ratio(Minutes production, Minutes available) {
  if (available <= 0) return 0.0;
  return static_cast<double>(production) / static_cast<double>(available);
}

int percent_half_up(double ratio) {
  // Nudge by a tiny epsilon so exact halves survive binary rounding.
  return static_cast<int>(std::floor(ratio * 100.0 + 0.5 + 1e-9));
}

Utilization personnel_utilization(const Instance& instance,
                                  const Schedule& schedule) {
  Utilization out;
  out.busy.assign(instance.personnel_count(),
                  std::vector<Minutes>(instance.period_count(), 0));
  for (const PositionRun& run : schedule.runs) {
    if (run.personnel < 1 || run.personnel > instance.personnel_count() ||
        run.period < 1 || run.period > instance.period_count()) {
      throw ScheduleError("run on machine " + std::to_string(run.machine) +
                          " references unknown personnel or period");
    }
    out.busy[run.personnel - 1][run.period - 1] +=
        run.personnel_end - run.personnel_start;
  }
  out.production = total_production_time(instance, schedule).total;
  out.available = total_available_time(instance);
  out.ratio = utilization_ratio(out.production, out.available);
  return out;
}

std::vector<std::string> validate_instance(const Instance& instance,
                                           Regime regime) {
  std::vector<std::string> defects;
  auto defect = [&defects](const std::string& text) {
    defects.push_back(text);
  };

  if (instance.periods.empty()) defect("instance has no periods");
  for (std::size_t t = 0; t < instance.periods.size(); ++t) {
    const Period& period = instance.periods[t];
    if (period.index != static_cast<int>(t) + 1) {
      defect("period indices must be contiguous from 1 (found " +
             std::to_string(period.index) + " at slot " +
             std::to_string(t + 1) + ")");
    }
    if (period.available_time <= 0) {
      defect("period " + std::to_string(t + 1) +
             " must have positive available time");
    }
  }
  if (instance.machines.empty()) defect("instance has no machines");
  for (std::size_t l = 0; l < instance.machines.size(); ++l) {
    const Machine& m = instance.machines[l];
    if (m.id != static_cast<int>(l) + 1) {
      defect("machine ids must be contiguous from 1");
    }
    if (m.positions_per_period < 1) {
      defect("machine " + std::to_string(m.id) +
             " needs at least one position per period");
    }
    if (m.final_cleaning && *m.final_cleaning < 0) {
      defect("machine " + std::to_string(m.id) +
             " final cleaning must be nonnegative");
    }
  }
  if (instance.personnel.empty()) defect("instance has no personnel");
  if (regime == Regime::kEnforce &&
      instance.personnel_count() >= instance.machine_count()) {
    defect("personnel must be fewer than machines");
  }
  // Everything below indexes periods and machines.
  if (!defects.empty() &&
      (instance.periods.empty() || instance.machines.empty())) {
    return defects;
  }

  const int periods = instance.period_count();
  for (std::size_t k = 0; k < instance.personnel.size(); ++k) {
    const Personnel& person = instance.personnel[k];
    const std::string who = "personnel " + std::to_string(person.id);
    if (person.id != static_cast<int>(k) + 1) {
      defect("personnel ids must be contiguous from 1");
    }
    if (static_cast<int>(person.windows.size()) != periods) {
      defect(who + " needs exactly one window per period");
      continue;
    }
    for (int t = 1; t <= periods; ++t) {
      const Window& w = person.windows[t - 1];
      if (w.start < 0 || w.start > w.end || w.end > instance.avb(t)) {
        defect(who + " window in period " + std::to_string(t) + " [" +
               std::to_string(w.start) + ", " + std::to_string(w.end) +
               "] must satisfy 0 <= start <= end <= " +
               std::to_string(instance.avb(t)));
      }
    }
  }

  const bool setups_sized =
      instance.setups.jobs() == instance.job_count() &&
      instance.setups.machines() == instance.machine_count();
  if (!setups_sized) {
    defect("setup matrix dimensions do not match jobs x machines");
  }
  for (std::size_t i = 0; i < instance.jobs.size(); ++i) {
    const Job& job = instance.jobs[i];
    const std::string what = "job " + std::to_string(job.id);
    if (job.id != static_cast<int>(i) + 1) {
      defect("job ids must be contiguous from 1");
      continue;
    }
    if (job.processing.empty()) {
      defect(what + " has an empty processing map (no eligible machine)");
    }
    for (const auto& [machine, minutes] : job.processing) {
      if (machine < 1 || machine > instance.machine_count()) {
        defect(what + " names unknown machine " + std::to_string(machine));
      } else if (minutes <= 0) {
        defect(what + " must have positive processing time on machine " +
               std::to_string(machine));
      }
    }
    if (job.release_period < 1 || job.release_period > periods ||
        job.delivery_period < 1 || job.delivery_period > periods) {
      defect(what + " release/delivery period outside the horizon");
      continue;
    }
    if (job.release_period > job.delivery_period) {
      defect(what + " release period after delivery period");
    }
    if (job.release_time < 0 ||
        job.release_time >= instance.avb(job.release_period)) {
      defect(what + " release time must lie in [0, AVB) of its period");
    }
    if (job.delivery_time <= 0 ||
        job.delivery_time > instance.avb(job.delivery_period)) {
      defect(what + " delivery time must lie in (0, AVB] of its period");
    }
  }
  if (setups_sized) {
    for (int l = 1; l <= instance.machine_count(); ++l) {
      for (int i = 1; i <= instance.job_count(); ++i) {
        if (instance.setups.initial(i, l) < 0) {
          defect("initial setup of job " + std::to_string(i) +
                 " on machine " + std::to_string(l) + " is negative");
        }
        if (auto term = instance.setups.terminal(i, l); term && *term < 0) {
          defect("terminal setup of job " + std::to_string(i) +
                 " on machine " + std::to_string(l) + " is negative");
        }
        for (int j = 1; j <= instance.job_count(); ++j) {
          if (i != j && instance.setups.between(i, j, l) < 0) {
            defect("setup " + std::to_string(i) + "->" + std::to_string(j) +
                   " on machine " + std::to_string(l) + " is negative");
          }
        }
      }
    }
  }
  return defects;
}

void require_valid_instance(const Instance& instance) {
  const std::vector<std::string> defects =
      validate_instance(instance, Regime::kRelaxed);
  if (defects.empty()) return;
  std::string text = "invalid instance:";
  for (const std::string& d : defects) text += "\n  " + d;
  throw std::invalid_argument(text);
}

Connectivity derive_connectivity(const Instance& instance,
                                 const std::vector<PositionRun>& runs) {
  Connectivity out;
  out.successors.assign(runs.size(), kDummyJob);
  const int periods = instance.period_count();
  for (int l = 1; l <= instance.machine_count(); ++l) {
    std::vector<std::size_t> order;
    for (std::size_t r = 0; r < runs.size(); ++r) {
      if (runs[r].machine == l && !runs[r].jobs.empty()) order.push_back(r);
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::tie(runs[a].period, runs[a].position) <
             std::tie(runs[b].period, runs[b].position);
    });
    for (std::size_t k = 0; k + 1 < order.size(); ++k) {
      out.successors[order[k]] = runs[order[k + 1]].jobs.front();
    }
    if (order.empty() || periods < 2) continue;

    std::set<int> busy;
    for (std::size_t r : order) busy.insert(runs[r].period);
    // v indexes the dummy period 0 through |T| - 1.
    for (int v = 0; v < periods; ++v) {
      if (busy.count(v + 1)) continue;
      int pending = runs[order.front()].jobs.front();
      for (std::size_t r : order) {
        if (runs[r].period <= v) pending = out.successors[r];
      }
      out.aux_links.push_back({pending, l, v});
    }
  }
  return out;
}

}  // namespace upms
