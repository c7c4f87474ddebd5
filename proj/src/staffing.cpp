#include "upms/staffing.hpp"

#include <algorithm>
#include <limits>

namespace upms {

RunTiming time_run(const Instance& instance, int machine, int period,
                   const std::vector<int>& jobs, int successor,
                   Minutes personnel_start) {
  RunTiming out;
  out.starts.reserve(jobs.size());
  out.ends.reserve(jobs.size());
  Minutes ready = personnel_start;
  for (std::size_t x = 0; x < jobs.size(); ++x) {
    const int i = jobs[x];
    const Job& job = instance.job(i);
    const Minutes release = period == job.release_period ? job.release_time : 0;
    ready += x == 0 ? instance.initial_setup(i, machine)
                    : instance.setup(jobs[x - 1], i, machine);
    const Minutes start = std::max(ready, release);
    const Minutes end = start + instance.processing_or_zero(i, machine);
    out.starts.push_back(start);
    out.ends.push_back(end);
    ready = end;
  }
  out.personnel_end =
      jobs.empty() ? personnel_start
                   : ready + instance.changeover(jobs.back(), successor, machine);
  return out;
}

bool run_fits(const Instance& instance, int period, const std::vector<int>& jobs,
              const RunTiming& timing, Minutes limit) {
  if (timing.personnel_end > std::min(limit, instance.avb(period))) return false;
  for (std::size_t x = 0; x < jobs.size(); ++x) {
    const Job& job = instance.job(jobs[x]);
    if (period < job.release_period || period > job.delivery_period) return false;
    if (timing.ends[x] > instance.delivery_bound(jobs[x], period)) return false;
  }
  return true;
}

namespace {

class PeriodSearch {
 public:
  PeriodSearch(const Instance& in, int period, const std::vector<StaffRun>& runs,
               std::int64_t* budget)
      : in_(in), t_(period), runs_(runs), budget_(budget) {
    const int n = static_cast<int>(runs.size());
    pred_.assign(n, -1);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (runs[b].machine == runs[a].machine && runs[b].rank + 1 == runs[a].rank) {
          pred_[a] = b;
        }
      }
    }
    const int K = in.personnel_count();
    free_.assign(K + 1, kUnused);
    staffing_.personnel.assign(n, 0);
    staffing_.routes.assign(K, {});
    staffing_.personnel_start.assign(n, 0);
    staffing_.personnel_end.assign(n, 0);
    done_.assign(n, false);
  }

  std::optional<Staffing> Solve() {
    for (std::size_t r = 0; r < runs_.size(); ++r) {
      if (runs_[r].rank > 1 && pred_[r] < 0) return std::nullopt;
    }
    if (Dfs(0, std::numeric_limits<Minutes>::min(), -1)) return staffing_;
    return std::nullopt;
  }

 private:
  static constexpr Minutes kUnused = std::numeric_limits<Minutes>::min();

  bool Dfs(std::size_t depth, Minutes last_start, int last_run) {
    if (depth == runs_.size()) return true;
    if (budget_) {
      if (*budget_ <= 0) return false;
      --*budget_;
    }
    const int K = in_.personnel_count();
    for (int r = 0; r < static_cast<int>(runs_.size()); ++r) {
      if (done_[r]) continue;
      const int p = pred_[r];
      if (p >= 0 && !done_[p]) continue;
      const Minutes after = p >= 0 ? staffing_.personnel_end[p] : 0;
      for (int k = 1; k <= K; ++k) {
        const Window w = in_.window(k, t_);
        if (free_[k] == kUnused && SymmetricToEarlier(k)) continue;
        Minutes start = std::max(w.start, after);
        if (free_[k] != kUnused) start = std::max(start, free_[k]);
        // Visit runs in nondecreasing start order; every feasible staffing
        // has exactly one such order, so this loses nothing.
        if (start < last_start || (start == last_start && r < last_run)) continue;
        const StaffRun& run = runs_[r];
        const RunTiming timing =
            time_run(in_, run.machine, t_, run.jobs, run.successor, start);
        if (!run_fits(in_, t_, run.jobs, timing, w.end)) continue;

        const Minutes saved = free_[k];
        done_[r] = true;
        free_[k] = timing.personnel_end;
        staffing_.personnel[r] = k;
        staffing_.personnel_start[r] = start;
        staffing_.personnel_end[r] = timing.personnel_end;
        staffing_.routes[k - 1].push_back(r);
        if (Dfs(depth + 1, start, r)) return true;
        staffing_.routes[k - 1].pop_back();
        free_[k] = saved;
        done_[r] = false;
        if (budget_ && *budget_ <= 0) return false;
      }
    }
    return false;
  }

  // An idle personnel whose window equals an earlier idle one's is
  // interchangeable with it.
  bool SymmetricToEarlier(int k) const {
    const Window w = in_.window(k, t_);
    for (int j = 1; j < k; ++j) {
      const Window v = in_.window(j, t_);
      if (free_[j] == kUnused && v.start == w.start && v.end == w.end) return true;
    }
    return false;
  }

  const Instance& in_;
  int t_;
  const std::vector<StaffRun>& runs_;
  std::int64_t* budget_;
  std::vector<int> pred_;
  std::vector<Minutes> free_;
  std::vector<bool> done_;
  Staffing staffing_;
};

}  // namespace

std::optional<Staffing> staff_period(const Instance& instance, int period,
                                     const std::vector<StaffRun>& runs,
                                     std::int64_t* node_budget) {
  if (runs.empty()) {
    Staffing empty;
    empty.routes.assign(instance.personnel_count(), {});
    return empty;
  }
  return PeriodSearch(instance, period, runs, node_budget).Solve();
}

}  // namespace upms
