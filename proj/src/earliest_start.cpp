#include <algorithm>
#include <set>
#include <tuple>

#include "upms/oracle.hpp"
#include "upms/staffing.hpp"

namespace upms {

std::optional<Schedule> earliest_start_assignment(const Instance& in,
                                                  const Skeleton& sk) {
  const int n = static_cast<int>(sk.runs.size());
  const int K = in.personnel_count();

  std::vector<int> personnel(n, 0);
  for (int r = 0; r < n; ++r) {
    const SkeletonRun& run = sk.runs[r];
    if (run.personnel) {
      personnel[r] = *run.personnel;
      continue;
    }
    for (const PersonnelRoute& route : sk.routes) {
      if (route.period == run.period &&
          std::find(route.positions.begin(), route.positions.end(), run.position) !=
              route.positions.end()) {
        personnel[r] = route.personnel;
        break;
      }
    }
  }

  std::vector<PositionRun> runs(n);
  for (int r = 0; r < n; ++r) {
    runs[r].machine = sk.runs[r].machine;
    runs[r].position = sk.runs[r].position;
    runs[r].period = sk.runs[r].period;
    runs[r].jobs = sk.runs[r].jobs;
    runs[r].personnel = personnel[r];
  }
  const Connectivity derived = derive_connectivity(in, runs);
  for (int r = 0; r < n; ++r) {
    runs[r].successor = sk.successors ? sk.successors->at(r) : derived.successors[r];
  }

  auto run_at = [&](int position, int period) {
    for (int r = 0; r < n; ++r) {
      if (runs[r].position == position && runs[r].period == period) return r;
    }
    return -1;
  };
  auto staffed = [&](int r) { return !runs[r].jobs.empty() && personnel[r] > 0; };

  std::vector<std::vector<int>> next(n);
  std::vector<int> indegree(n, 0);
  auto edge = [&](int a, int b) {
    next[a].push_back(b);
    ++indegree[b];
  };
  for (int r = 0; r < n; ++r) {
    const int rank = in.rank_of_position(runs[r].position);
    if (rank < 2 || !staffed(r)) continue;
    const int prev = run_at(runs[r].position - 1, runs[r].period);
    if (prev >= 0 && staffed(prev)) edge(prev, r);
  }
  for (const PersonnelRoute& route : sk.routes) {
    for (std::size_t x = 1; x < route.positions.size(); ++x) {
      const int a = run_at(route.positions[x - 1], route.period);
      const int b = run_at(route.positions[x], route.period);
      if (a >= 0 && b >= 0) edge(a, b);
    }
  }

  std::vector<int> order;
  std::vector<int> ready;
  for (int r = 0; r < n; ++r) {
    if (indegree[r] == 0) ready.push_back(r);
  }
  while (!ready.empty()) {
    const int r = ready.back();
    ready.pop_back();
    order.push_back(r);
    for (int b : next[r]) {
      if (--indegree[b] == 0) ready.push_back(b);
    }
  }
  if (static_cast<int>(order.size()) != n) return std::nullopt;

  std::vector<Minutes> earliest(n, 0);
  std::vector<RunTiming> timing(n);
  for (int r : order) {
    const int k = personnel[r];
    const bool known = k >= 1 && k <= K;
    Minutes start = earliest[r];
    if (known) start = std::max(start, in.window(k, runs[r].period).start);
    timing[r] = time_run(in, runs[r].machine, runs[r].period, runs[r].jobs,
                         runs[r].successor, start);
    runs[r].personnel_start = start;
    runs[r].personnel_end = timing[r].personnel_end;
    const Minutes limit = known ? in.window(k, runs[r].period).end
                                : in.avb(runs[r].period);
    if (start > in.avb(runs[r].period) ||
        !run_fits(in, runs[r].period, runs[r].jobs, timing[r], limit)) {
      return std::nullopt;
    }
    for (int b : next[r]) earliest[b] = std::max(earliest[b], timing[r].personnel_end);
  }

  Schedule s;
  std::set<int> accepted;
  for (int r = 0; r < n; ++r) {
    for (std::size_t x = 0; x < runs[r].jobs.size(); ++x) {
      s.placements.push_back({runs[r].jobs[x], runs[r].machine, runs[r].position,
                              runs[r].period, timing[r].starts[x], timing[r].ends[x]});
      accepted.insert(runs[r].jobs[x]);
    }
    if (personnel[r] == 0) {
      runs[r].personnel_start = 0;
      runs[r].personnel_end = 0;
    }
  }
  s.runs = runs;
  s.personnel_routes = sk.routes;
  s.aux_links = sk.aux_links ? *sk.aux_links : derived.aux_links;
  s.accepted.assign(accepted.begin(), accepted.end());
  normalize(s);
  return s;
}

std::vector<int> run_successors(const std::vector<MachineRun>& runs) {
  const int n = static_cast<int>(runs.size());
  std::vector<int> order(n);
  for (int r = 0; r < n; ++r) order[r] = r;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::tie(runs[a].machine, runs[a].period, runs[a].rank) <
           std::tie(runs[b].machine, runs[b].period, runs[b].rank);
  });
  std::vector<int> succ(n, kDummyJob);
  int next_job = kDummyJob;
  int machine = 0;
  for (int x = n - 1; x >= 0; --x) {
    const MachineRun& run = runs[order[x]];
    if (run.machine != machine) {
      machine = run.machine;
      next_job = kDummyJob;
    }
    succ[order[x]] = next_job;
    if (!run.jobs.empty()) next_job = run.jobs.front();
  }
  return succ;
}

std::optional<Schedule> realize_runs(const Instance& in,
                                     const std::vector<MachineRun>& runs,
                                     std::int64_t* node_budget) {
  const std::vector<int> succ = run_successors(runs);
  Skeleton sk;
  std::vector<std::vector<StaffRun>> per_period(in.period_count() + 1);
  std::vector<std::vector<int>> index(in.period_count() + 1);
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const MachineRun& run = runs[r];
    if (run.jobs.empty()) continue;
    per_period[run.period].push_back({run.machine, run.rank, run.jobs, succ[r]});
    index[run.period].push_back(static_cast<int>(sk.runs.size()));
    sk.runs.push_back(
        {run.machine, in.position_id(run.machine, run.rank), run.period, run.jobs, {}});
  }
  std::vector<int> skeleton_succ;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    if (!runs[r].jobs.empty()) skeleton_succ.push_back(succ[r]);
  }
  for (int t = 1; t <= in.period_count(); ++t) {
    const auto staffing = staff_period(in, t, per_period[t], node_budget);
    if (!staffing) return std::nullopt;
    for (std::size_t x = 0; x < per_period[t].size(); ++x) {
      sk.runs[index[t][x]].personnel = staffing->personnel[x];
    }
    for (int k = 1; k <= in.personnel_count(); ++k) {
      const auto& order = staffing->routes[k - 1];
      if (order.empty()) continue;
      PersonnelRoute route{k, t, {}};
      for (int x : order) route.positions.push_back(sk.runs[index[t][x]].position);
      sk.routes.push_back(route);
    }
  }
  sk.successors = skeleton_succ;
  return earliest_start_assignment(in, sk);
}

}  // namespace upms
