#include "upms/heuristic.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <string>
#include <tuple>

#include "upms/staffing.hpp"
#include "upms/validator.hpp"

namespace upms {

namespace {

// Staffing search nodes allowed per period check.
constexpr std::int64_t kStaffBudget = 20000;

using Layout = std::vector<MachineRun>;

void SortLayout(Layout& runs) {
  std::sort(runs.begin(), runs.end(), [](const MachineRun& a, const MachineRun& b) {
    return std::tie(a.machine, a.period, a.rank) < std::tie(b.machine, b.period, b.rank);
  });
}

int RunsIn(const Layout& runs, int l, int t) {
  int c = 0;
  for (const MachineRun& r : runs) c += r.machine == l && r.period == t;
  return c;
}

// Inserts a single-job run at `rank` of (l, t), shifting later ranks.
Layout WithNewRun(Layout runs, int l, int t, int rank, int job) {
  for (MachineRun& r : runs) {
    if (r.machine == l && r.period == t && r.rank >= rank) ++r.rank;
  }
  runs.push_back({l, t, rank, {job}});
  SortLayout(runs);
  return runs;
}

// Removes runs[r].jobs[x]; an emptied run disappears.
Layout Without(Layout runs, std::size_t r, std::size_t x) {
  runs[r].jobs.erase(runs[r].jobs.begin() + static_cast<std::ptrdiff_t>(x));
  if (runs[r].jobs.empty()) {
    const MachineRun gone = runs[r];
    runs.erase(runs.begin() + static_cast<std::ptrdiff_t>(r));
    for (MachineRun& o : runs) {
      if (o.machine == gone.machine && o.period == gone.period && o.rank > gone.rank) {
        --o.rank;
      }
    }
  }
  return runs;
}

bool Placeable(const Instance& in, int job, int l, int t) {
  const Job& j = in.job(job);
  return in.eligible(job, l) && t >= j.release_period && t <= j.delivery_period;
}

// Every way to put `job` into `runs`, in a fixed scan order.
std::vector<Layout> Insertions(const Instance& in, const Layout& runs, int job) {
  std::vector<Layout> out;
  for (int l = 1; l <= in.machine_count(); ++l) {
    for (int t = 1; t <= in.period_count(); ++t) {
      if (!Placeable(in, job, l, t)) continue;
      for (std::size_t r = 0; r < runs.size(); ++r) {
        if (runs[r].machine != l || runs[r].period != t) continue;
        for (std::size_t x = 0; x <= runs[r].jobs.size(); ++x) {
          Layout next = runs;
          next[r].jobs.insert(next[r].jobs.begin() + static_cast<std::ptrdiff_t>(x), job);
          out.push_back(std::move(next));
        }
      }
      const int c = RunsIn(runs, l, t);
      if (c < in.machine(l).positions_per_period) {
        for (int rank = 1; rank <= c + 1; ++rank) {
          out.push_back(WithNewRun(runs, l, t, rank, job));
        }
      }
    }
  }
  return out;
}

class Evaluator {
 public:
  explicit Evaluator(const Instance& in) : in_(in) {}

  bool Feasible(const Layout& runs) {
    const std::vector<int> succ = run_successors(runs);
    std::vector<std::vector<StaffRun>> per_period(in_.period_count() + 1);
    for (std::size_t r = 0; r < runs.size(); ++r) {
      for (int i : runs[r].jobs) {
        if (!Placeable(in_, i, runs[r].machine, runs[r].period)) return false;
      }
      per_period[runs[r].period].push_back(
          {runs[r].machine, runs[r].rank, runs[r].jobs, succ[r]});
    }
    for (int t = 1; t <= in_.period_count(); ++t) {
      if (!Staffable(t, per_period[t])) return false;
    }
    return true;
  }

 private:
  bool Staffable(int t, const std::vector<StaffRun>& runs) {
    std::string key = std::to_string(t);
    for (const StaffRun& r : runs) {
      key += '|' + std::to_string(r.machine) + ',' + std::to_string(r.rank) + ',' +
             std::to_string(r.successor);
      for (int i : r.jobs) key += ',' + std::to_string(i);
    }
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::int64_t budget = kStaffBudget;
    const bool ok = staff_period(in_, t, runs, &budget).has_value();
    memo_.emplace(std::move(key), ok);
    return ok;
  }

  const Instance& in_;
  std::map<std::string, bool> memo_;
};

Schedule Realize(const Instance& in, const Layout& runs) {
  std::int64_t budget = kStaffBudget * std::max(1, in.period_count());
  auto s = realize_runs(in, runs, &budget);
  return s ? *s : Schedule{};
}

Mode ModeFor(const Instance& in, const Schedule& s) {
  return static_cast<int>(s.accepted.size()) == in.job_count() ? Mode::kStep2
                                                               : Mode::kStep1;
}

}  // namespace

std::vector<MachineRun> machine_runs(const Schedule& schedule, const Instance& in) {
  Layout runs;
  for (const PositionRun& r : schedule.runs) {
    if (r.jobs.empty()) continue;
    runs.push_back({r.machine, r.period, in.rank_of_position(r.position), r.jobs});
  }
  SortLayout(runs);
  // Close gaps left by dropped empty runs.
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const bool first = r == 0 || runs[r - 1].machine != runs[r].machine ||
                       runs[r - 1].period != runs[r].period;
    runs[r].rank = first ? 1 : runs[r - 1].rank + 1;
  }
  return runs;
}

Minutes layout_cost(const Instance& in, const std::vector<MachineRun>& runs) {
  const std::vector<int> succ = run_successors(runs);
  Minutes total = 0;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const auto& jobs = runs[r].jobs;
    if (jobs.empty()) continue;
    const int l = runs[r].machine;
    total += in.initial_setup(jobs.front(), l);
    for (std::size_t x = 0; x < jobs.size(); ++x) {
      total += in.processing_or_zero(jobs[x], l);
      if (x > 0) total += in.setup(jobs[x - 1], jobs[x], l);
    }
    total += in.changeover(jobs.back(), succ[r], l);
  }
  return total;
}

namespace {

// Exchange attempts allowed after the insertion pass.
constexpr int kExchangeBudget = 4000;

// Cheapest feasible insertion of `job`, or false.
bool InsertCheapest(const Instance& in, Evaluator& eval, Layout& runs, int job) {
  std::vector<Layout> options = Insertions(in, runs, job);
  std::vector<std::pair<Minutes, std::size_t>> ranked;
  for (std::size_t o = 0; o < options.size(); ++o) {
    ranked.push_back({layout_cost(in, options[o]), o});
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [cost, o] : ranked) {
    if (eval.Feasible(options[o])) {
      runs = std::move(options[o]);
      return true;
    }
  }
  return false;
}

std::vector<int> Placed(const Layout& runs) {
  std::vector<int> out;
  for (const MachineRun& r : runs) out.insert(out.end(), r.jobs.begin(), r.jobs.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t Find(const Layout& runs, int job, std::size_t& x) {
  for (std::size_t r = 0; r < runs.size(); ++r) {
    for (x = 0; x < runs[r].jobs.size(); ++x) {
      if (runs[r].jobs[x] == job) return r;
    }
  }
  return runs.size();
}

}  // namespace

Schedule greedy_construct(const Instance& in) {
  require_valid_instance(in);
  std::vector<int> order;
  for (int i = 1; i <= in.job_count(); ++i) order.push_back(i);
  auto min_p = [&](int i) {
    Minutes best = std::numeric_limits<Minutes>::max();
    for (const auto& [l, p] : in.job(i).processing) best = std::min(best, p);
    return best;
  };
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const int da = in.job(a).delivery_period, db = in.job(b).delivery_period;
    if (da != db) return da < db;
    return min_p(a) > min_p(b);
  });

  Evaluator eval(in);
  Layout runs;
  for (int job : order) InsertCheapest(in, eval, runs, job);

  // Trade a placed job for a skipped one when that admits more jobs or the
  // same number more cheaply.
  int attempts = 0;
  bool improved = true;
  while (improved && attempts < kExchangeBudget) {
    improved = false;
    const std::vector<int> placed = Placed(runs);
    const std::size_t count = placed.size();
    const Minutes cost = layout_cost(in, runs);
    for (int s : order) {
      if (std::binary_search(placed.begin(), placed.end(), s)) continue;
      for (int a : placed) {
        if (++attempts > kExchangeBudget) break;
        std::size_t x = 0;
        const std::size_t r = Find(runs, a, x);
        Layout next = Without(runs, r, x);
        if (!InsertCheapest(in, eval, next, s)) continue;
        for (int other : order) {
          const std::vector<int> now = Placed(next);
          if (!std::binary_search(now.begin(), now.end(), other)) {
            InsertCheapest(in, eval, next, other);
          }
        }
        const std::size_t c = Placed(next).size();
        if (c > count || (c == count && layout_cost(in, next) < cost)) {
          runs = std::move(next);
          improved = true;
          break;
        }
      }
      if (improved || attempts > kExchangeBudget) break;
    }
  }
  return Realize(in, runs);
}

Schedule local_search(const Instance& in, const Schedule& schedule,
                      std::int64_t budget) {
  if (budget <= 0) return schedule;
  const Mode mode = ModeFor(in, schedule);
  Evaluator eval(in);
  Layout current = machine_runs(schedule, in);
  Minutes cost = layout_cost(in, current);
  Schedule best = schedule;

  // Returns true when `next` was accepted.
  auto consider = [&](Layout next) {
    --budget;
    const Minutes c = layout_cost(in, next);
    if (c >= cost || !eval.Feasible(next)) return false;
    Schedule timed = Realize(in, next);
    if (timed.runs.empty() || !validate_schedule(in, timed, mode).is_feasible()) {
      return false;
    }
    current = std::move(next);
    cost = c;
    best = std::move(timed);
    return true;
  };

  bool improved = true;
  while (improved && budget > 0) {
    improved = false;
    // Swap two jobs within a run.
    for (std::size_t r = 0; r < current.size() && !improved; ++r) {
      const std::size_t len = current[r].jobs.size();
      for (std::size_t a = 0; a < len && !improved; ++a) {
        for (std::size_t b = a + 1; b < len && !improved; ++b) {
          if (budget <= 0) return best;
          Layout next = current;
          std::swap(next[r].jobs[a], next[r].jobs[b]);
          improved = consider(std::move(next));
        }
      }
    }
    // Relocate one job to any other slot.
    for (std::size_t r = 0; r < current.size() && !improved; ++r) {
      for (std::size_t x = 0; x < current[r].jobs.size() && !improved; ++x) {
        const int job = current[r].jobs[x];
        const Layout rest = Without(current, r, x);
        for (Layout& next : Insertions(in, rest, job)) {
          if (next == current) continue;
          if (budget <= 0) return best;
          if ((improved = consider(std::move(next)))) break;
        }
      }
    }
    // Reverse a segment of three or more jobs within a run.
    for (std::size_t r = 0; r < current.size() && !improved; ++r) {
      const std::size_t len = current[r].jobs.size();
      for (std::size_t a = 0; a < len && !improved; ++a) {
        for (std::size_t b = a + 2; b < len && !improved; ++b) {
          if (budget <= 0) return best;
          Layout next = current;
          std::reverse(next[r].jobs.begin() + static_cast<std::ptrdiff_t>(a),
                       next[r].jobs.begin() + static_cast<std::ptrdiff_t>(b) + 1);
          improved = consider(std::move(next));
        }
      }
    }
  }
  return best;
}

}  // namespace upms
