#include "upms/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <map>
#include <string>

#include "upms/staffing.hpp"

namespace upms {

bool within_oracle_guard(const Instance& in) {
  if (in.job_count() > OracleGuard::kMaxJobs ||
      in.machine_count() > OracleGuard::kMaxMachines ||
      in.period_count() > OracleGuard::kMaxPeriods) {
    return false;
  }
  for (const Machine& m : in.machines) {
    if (m.positions_per_period > OracleGuard::kMaxPositions) return false;
  }
  return true;
}

namespace {

using Clock = std::chrono::steady_clock;
using JobMask = std::uint32_t;
using Key = std::vector<std::vector<int>>;

constexpr int kMaxRuns = OracleGuard::kMaxPositions * OracleGuard::kMaxPeriods;

struct PlanRun {
  std::int8_t period;
  std::int8_t rank;
  std::int8_t begin;
  std::int8_t end;
};

struct Plan {
  JobMask mask = 0;
  std::int8_t count = 0;
  std::int8_t run_count = 0;
  std::array<std::int8_t, OracleGuard::kMaxJobs> order{};
  std::array<PlanRun, kMaxRuns> runs{};
  Minutes cost = 0;

  std::vector<int> Jobs(const PlanRun& r) const {
    return std::vector<int>(order.begin() + r.begin, order.begin() + r.end);
  }
  int Successor(int r) const {
    return r + 1 < run_count ? order[runs[r + 1].begin] : kDummyJob;
  }
};

// Ranks used per period, e.g. {2, 0} = two runs in period 1.
std::vector<std::vector<int>> SlotPatterns(int periods, int positions) {
  std::vector<std::vector<int>> out;
  std::vector<int> counts(periods, 0);
  while (true) {
    out.push_back(counts);
    int t = 0;
    while (t < periods && counts[t] == positions) counts[t++] = 0;
    if (t == periods) break;
    ++counts[t];
  }
  return out;
}

class Oracle {
 public:
  Oracle(const Instance& in, Mode mode, const OracleLimits& limits)
      : in_(in), mode_(mode), limits_(limits), begin_(Clock::now()) {}

  SolveReport Solve() {
    const int M = in_.machine_count();
    const int n = in_.job_count();
    all_ = n == 0 ? 0 : static_cast<JobMask>((1ULL << n) - 1);
    plans_.assign(M + 1, {});
    for (int l = 1; l <= M; ++l) EnumeratePlans(l);
    Precompute();

    period_runs_.assign(in_.period_count() + 1, {});
    choice_.assign(M + 1, -1);
    Dfs(1, 0, 0);

    SolveReport report;
    report.backend = "oracle";
    const double seconds =
        std::chrono::duration<double>(Clock::now() - begin_).count();
    if (mode_ == Mode::kStep1) report.step1_seconds = seconds;
    else report.step2_seconds = seconds;
    report.step2_run = mode_ == Mode::kStep2;
    if (!found_) {
      report.status = SolveStatus::kTimedOut;
      return report;
    }
    report.schedule = BuildSchedule();
    report.accepted_count = best_count_;
    report.objective = total_production_time(in_, report.schedule);
    report.bound = timed_out_ ? 0 : report.objective.total;
    report.gap = relative_gap(report.objective.total, report.bound);
    report.step1_proven = !timed_out_ && mode_ == Mode::kStep1;
    if (timed_out_) {
      report.status = SolveStatus::kTimedOut;
    } else if (best_count_ == n) {
      report.status = SolveStatus::kAllScheduled;
    } else {
      report.status = SolveStatus::kInfeasibleSubset;
    }
    return report;
  }

  bool found() const { return found_; }
  bool timed_out() const { return timed_out_; }

 private:
  void EnumeratePlans(int l) {
    const int n = in_.job_count();
    const int T = in_.period_count();
    const int q = in_.machine(l).positions_per_period;
    std::vector<Plan>& out = plans_[l];
    out.push_back(Plan{});  // idle machine
    JobMask eligible = 0;
    for (int i = 1; i <= n; ++i) {
      if (in_.eligible(i, l)) eligible |= JobMask{1} << (i - 1);
    }
    const auto patterns = SlotPatterns(T, q);
    for (JobMask mask = eligible; mask; mask = (mask - 1) & eligible) {
      std::vector<int> jobs;
      for (int i = 1; i <= n; ++i) {
        if (mask & (JobMask{1} << (i - 1))) jobs.push_back(i);
      }
      const int s = static_cast<int>(jobs.size());
      do {
        for (const auto& pattern : patterns) {
          int runs = 0;
          for (int c : pattern) runs += c;
          if (runs < 1 || runs > s) continue;
          // Cut the permutation at a chosen subset of the s - 1 gaps.
          for (std::uint32_t cuts = 0; cuts < (1u << (s - 1)); ++cuts) {
            if (std::popcount(cuts) != runs - 1) continue;
            Plan plan;
            plan.mask = mask;
            plan.count = static_cast<std::int8_t>(s);
            plan.run_count = static_cast<std::int8_t>(runs);
            for (int x = 0; x < s; ++x) plan.order[x] = static_cast<std::int8_t>(jobs[x]);
            int begin = 0, r = 0;
            for (int t = 1; t <= T; ++t) {
              for (int rank = 1; rank <= pattern[t - 1]; ++rank) {
                int end = begin + 1;
                while (end < s && !(cuts & (1u << (end - 1)))) ++end;
                plan.runs[r++] = {static_cast<std::int8_t>(t),
                                  static_cast<std::int8_t>(rank),
                                  static_cast<std::int8_t>(begin),
                                  static_cast<std::int8_t>(end)};
                begin = end;
              }
            }
            if (Admissible(l, plan)) out.push_back(plan);
          }
        }
      } while (std::next_permutation(jobs.begin(), jobs.end()));
    }
    std::stable_sort(out.begin() + 1, out.end(), [&](const Plan& a, const Plan& b) {
      if (mode_ == Mode::kStep1 && a.count != b.count) return a.count > b.count;
      return a.cost < b.cost;
    });
  }

  // Period windows, plus a personnel-agnostic timing relaxation: the runs
  // of one machine in a period, started as early as any personnel could.
  bool Admissible(int l, Plan& plan) const {
    Minutes cost = 0;
    Minutes ready = 0;
    int period = 0;
    for (int r = 0; r < plan.run_count; ++r) {
      const PlanRun& run = plan.runs[r];
      const std::vector<int> jobs = plan.Jobs(run);
      for (int i : jobs) {
        const Job& job = in_.job(i);
        if (run.period < job.release_period || run.period > job.delivery_period) {
          return false;
        }
      }
      if (run.period != period) {
        period = run.period;
        ready = EarliestStart(period);
      }
      const int succ = plan.Successor(r);
      const RunTiming timing = time_run(in_, l, period, jobs, succ, ready);
      if (!run_fits(in_, period, jobs, timing, LatestEnd(period))) return false;
      ready = timing.personnel_end;
      cost += run_production_time(in_, ToRun(l, plan, r)).total;
    }
    plan.cost = cost;
    return true;
  }

  Minutes EarliestStart(int t) const {
    Minutes best = in_.avb(t);
    for (int k = 1; k <= in_.personnel_count(); ++k) {
      best = std::min(best, in_.window(k, t).start);
    }
    return best;
  }
  Minutes LatestEnd(int t) const {
    Minutes best = 0;
    for (int k = 1; k <= in_.personnel_count(); ++k) {
      best = std::max(best, in_.window(k, t).end);
    }
    return best;
  }

  PositionRun ToRun(int l, const Plan& plan, int r) const {
    PositionRun run;
    run.machine = l;
    run.position = in_.position_id(l, plan.runs[r].rank);
    run.period = plan.runs[r].period;
    run.jobs = plan.Jobs(plan.runs[r]);
    run.successor = plan.Successor(r);
    return run;
  }

  void Precompute() {
    const int M = in_.machine_count();
    const int n = in_.job_count();
    cover_from_.assign(M + 2, 0);
    job_lb_from_.assign(M + 2, std::vector<Minutes>(n + 1, kNoBound));
    for (int l = M; l >= 1; --l) {
      cover_from_[l] = cover_from_[l + 1];
      job_lb_from_[l] = job_lb_from_[l + 1];
      for (const Plan& p : plans_[l]) cover_from_[l] |= p.mask;
      for (int i = 1; i <= n; ++i) {
        if (!(cover_from_[l] & Bit(i)) || !in_.eligible(i, l)) continue;
        Minutes incoming = in_.initial_setup(i, l);
        for (int j = 1; j <= n; ++j) {
          if (j != i) incoming = std::min(incoming, in_.setup(j, i, l));
        }
        const Minutes lb = *in_.processing(i, l) + incoming;
        job_lb_from_[l][i] = std::min(job_lb_from_[l][i], lb);
      }
    }
  }

  static JobMask Bit(int i) { return JobMask{1} << (i - 1); }
  static constexpr Minutes kNoBound = std::numeric_limits<Minutes>::max() / 4;

  bool Expired() {
    if (timed_out_) return true;
    if ((++nodes_ & 1023) == 0 &&
        std::chrono::duration<double>(Clock::now() - begin_).count() >
            limits_.time_limit_seconds) {
      timed_out_ = true;
    }
    return timed_out_;
  }

  // Lower bound on the cost of scheduling `need` more jobs from `pool`.
  Minutes RemainingBound(int l, JobMask pool, int need) const {
    std::vector<Minutes> lbs;
    for (int i = 1; i <= in_.job_count(); ++i) {
      if (pool & Bit(i)) lbs.push_back(job_lb_from_[l][i]);
    }
    if (need > static_cast<int>(lbs.size())) return kNoBound;
    std::partial_sort(lbs.begin(), lbs.begin() + need, lbs.end());
    Minutes sum = 0;
    for (int x = 0; x < need; ++x) sum += lbs[x];
    return sum;
  }

  bool PeriodsStaffable(const Plan& plan) {
    std::vector<int> touched;
    for (int r = 0; r < plan.run_count; ++r) {
      const int t = plan.runs[r].period;
      if (std::find(touched.begin(), touched.end(), t) == touched.end()) {
        touched.push_back(t);
      }
    }
    for (int t : touched) {
      if (!Staffable(t)) return false;
    }
    return true;
  }

  bool Staffable(int t) {
    std::vector<StaffRun> runs = period_runs_[t];
    std::sort(runs.begin(), runs.end(), [](const StaffRun& a, const StaffRun& b) {
      return std::tie(a.machine, a.rank) < std::tie(b.machine, b.rank);
    });
    std::string key = std::to_string(t);
    for (const StaffRun& r : runs) {
      key += '|' + std::to_string(r.machine) + ',' + std::to_string(r.rank) + ',' +
             std::to_string(r.successor);
      for (int i : r.jobs) key += ',' + std::to_string(i);
    }
    auto it = staff_memo_.find(key);
    if (it != staff_memo_.end()) return it->second;
    const bool ok = staff_period(in_, t, runs).has_value();
    staff_memo_.emplace(std::move(key), ok);
    return ok;
  }

  void Push(int l, const Plan& plan) {
    for (int r = 0; r < plan.run_count; ++r) {
      period_runs_[plan.runs[r].period].push_back(
          {l, plan.runs[r].rank, plan.Jobs(plan.runs[r]), plan.Successor(r)});
    }
  }
  void Pop(const Plan& plan) {
    for (int r = plan.run_count - 1; r >= 0; --r) {
      period_runs_[plan.runs[r].period].pop_back();
    }
  }

  Key KeyOf(const std::vector<int>& choice) const {
    Key key;
    for (int l = 1; l < static_cast<int>(choice.size()); ++l) {
      const Plan& plan = plans_[l][choice[l]];
      std::vector<int> idx(plan.run_count);
      for (int r = 0; r < plan.run_count; ++r) idx[r] = r;
      std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        return std::tie(plan.runs[a].rank, plan.runs[a].period) <
               std::tie(plan.runs[b].rank, plan.runs[b].period);
      });
      for (int r : idx) {
        std::vector<int> entry = {l, in_.position_id(l, plan.runs[r].rank),
                                  plan.runs[r].period};
        for (int i : plan.Jobs(plan.runs[r])) entry.push_back(i);
        key.push_back(std::move(entry));
      }
    }
    return key;
  }

  void Leaf(int count, Minutes cost) {
    if (found_) {
      if (count < best_count_) return;
      if (count == best_count_ && cost > best_cost_) return;
      if (count == best_count_ && cost == best_cost_ && !(KeyOf(choice_) < best_key_)) {
        return;
      }
    }
    found_ = true;
    best_count_ = count;
    best_cost_ = cost;
    best_choice_ = choice_;
    best_key_ = KeyOf(choice_);
  }

  void Dfs(int l, JobMask used, Minutes cost) {
    if (Expired()) return;
    const int M = in_.machine_count();
    if (l > M) {
      if (mode_ == Mode::kStep2 && used != all_) return;
      Leaf(std::popcount(used), cost);
      return;
    }
    const std::vector<Plan>& options = plans_[l];
    for (std::size_t o = 0; o < options.size(); ++o) {
      const Plan& plan = options[o];
      if (plan.mask & used) continue;
      const Minutes c = cost + plan.cost;
      const JobMask now = used | plan.mask;
      const JobMask pool = all_ & ~now & cover_from_[l + 1];
      if (mode_ == Mode::kStep2) {
        if (found_ && c > best_cost_) break;
        if ((all_ & ~now) & ~cover_from_[l + 1]) continue;
        if (found_ && c + RemainingBound(l + 1, pool, std::popcount(pool)) > best_cost_) {
          continue;
        }
      } else if (found_) {
        const int have = std::popcount(now);
        const int reachable = have + std::popcount(pool);
        if (reachable < best_count_) continue;
        if (reachable == best_count_ &&
            c + RemainingBound(l + 1, pool, best_count_ - have) > best_cost_) {
          continue;
        }
      }
      Push(l, plan);
      choice_[l] = static_cast<int>(o);
      if (PeriodsStaffable(plan)) Dfs(l + 1, now, c);
      Pop(plan);
      if (timed_out_) return;
    }
  }

  Schedule BuildSchedule() const {
    std::vector<MachineRun> runs;
    for (int l = 1; l <= in_.machine_count(); ++l) {
      const Plan& plan = plans_[l][best_choice_[l]];
      for (int r = 0; r < plan.run_count; ++r) {
        runs.push_back({l, plan.runs[r].period, plan.runs[r].rank,
                        plan.Jobs(plan.runs[r])});
      }
    }
    auto schedule = realize_runs(in_, runs);
    if (!schedule) throw std::logic_error("oracle optimum lost its staffing");
    return *schedule;
  }

  const Instance& in_;
  Mode mode_;
  OracleLimits limits_;
  Clock::time_point begin_;
  JobMask all_ = 0;
  std::vector<std::vector<Plan>> plans_;
  std::vector<JobMask> cover_from_;
  std::vector<std::vector<Minutes>> job_lb_from_;
  std::vector<std::vector<StaffRun>> period_runs_;
  std::map<std::string, bool> staff_memo_;
  std::vector<int> choice_;
  std::uint64_t nodes_ = 0;
  bool timed_out_ = false;
  bool found_ = false;
  int best_count_ = 0;
  Minutes best_cost_ = 0;
  std::vector<int> best_choice_;
  Key best_key_;
};

}  // namespace

SolveReport exact_solve(const Instance& instance, Mode mode,
                        const OracleLimits& limits) {
  require_valid_instance(instance);
  if (!within_oracle_guard(instance)) {
    throw OracleRefused("instance exceeds the oracle guard (" +
                        std::to_string(OracleGuard::kMaxJobs) + " jobs, " +
                        std::to_string(OracleGuard::kMaxMachines) + " machines, " +
                        std::to_string(OracleGuard::kMaxPeriods) + " periods, " +
                        std::to_string(OracleGuard::kMaxPositions) +
                        " positions per period)");
  }
  const auto begin = Clock::now();
  if (mode == Mode::kStep2) {
    Oracle step2(instance, Mode::kStep2, limits);
    SolveReport report = step2.Solve();
    if (step2.found() || step2.timed_out()) return report;
    OracleLimits rest = limits;
    rest.time_limit_seconds -=
        std::chrono::duration<double>(Clock::now() - begin).count();
    SolveReport fallback = Oracle(instance, Mode::kStep1, rest).Solve();
    fallback.step2_run = false;
    return fallback;
  }
  return Oracle(instance, Mode::kStep1, limits).Solve();
}

}  // namespace upms
