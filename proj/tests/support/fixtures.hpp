#pragma once

// Small instance builders shared by the unit and acceptance tests.

#include <cstdint>
#include <random>

#include "upms/core.hpp"

namespace upms::testing {

/// Every job eligible everywhere with P = 100, S^I = 20, sequence setups
/// 10, personnel windows covering the whole period.
inline Instance uniform_instance(int jobs, int machines, int periods, int personnel,
                                 Minutes avb = 2250, int positions = 2) {
  Instance in;
  for (int t = 1; t <= periods; ++t) in.periods.push_back({t, avb});
  for (int l = 1; l <= machines; ++l) in.machines.push_back({l, positions, {}});
  for (int i = 1; i <= jobs; ++i) {
    Job job;
    job.id = i;
    for (int l = 1; l <= machines; ++l) job.processing[l] = 100;
    job.release_period = 1;
    job.release_time = 0;
    job.delivery_period = periods;
    job.delivery_time = avb;
    in.jobs.push_back(job);
  }
  in.setups = SetupMatrix(jobs, machines);
  for (int l = 1; l <= machines; ++l) {
    for (int i = 1; i <= jobs; ++i) {
      in.setups.set_initial(i, l, 20);
      for (int j = 1; j <= jobs; ++j) {
        if (i != j) in.setups.set_between(i, j, l, 10);
      }
    }
  }
  for (int k = 1; k <= personnel; ++k) {
    Personnel p{k, {}};
    for (int t = 1; t <= periods; ++t) p.windows.push_back({0, avb});
    in.personnel.push_back(p);
  }
  return in;
}

struct RandomShape {
  int max_jobs = 5;
  int max_machines = 3;
  int max_periods = 2;
  int max_personnel = 2;
  int positions = 2;
};

inline int Draw(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

/// Random instance inside the oracle guard. Jobs, machines, periods and
/// personnel counts are drawn first, then data. Personnel < machines is not
/// required.
inline Instance random_instance(std::uint64_t seed, const RandomShape& shape = {}) {
  std::mt19937_64 rng(seed);
  const int n = Draw(rng, 1, shape.max_jobs);
  const int m = Draw(rng, 1, shape.max_machines);
  const int T = Draw(rng, 1, shape.max_periods);
  const int K = Draw(rng, 1, shape.max_personnel);
  Instance in;
  const Minutes avb = Draw(rng, 4, 9) * 100;
  for (int t = 1; t <= T; ++t) in.periods.push_back({t, avb});
  for (int l = 1; l <= m; ++l) in.machines.push_back({l, shape.positions, {}});
  for (int i = 1; i <= n; ++i) {
    Job job;
    job.id = i;
    const int home = Draw(rng, 1, m);
    for (int l = 1; l <= m; ++l) {
      if (l == home || Draw(rng, 0, 2) > 0) job.processing[l] = Draw(rng, 30, 250);
    }
    job.release_period = Draw(rng, 1, T);
    job.delivery_period = Draw(rng, job.release_period, T);
    job.release_time = Draw(rng, 0, 3) == 0 ? Draw(rng, 0, static_cast<int>(avb / 3)) : 0;
    job.delivery_time = Draw(rng, 0, 3) == 0
                            ? Draw(rng, static_cast<int>(2 * avb / 3), static_cast<int>(avb))
                            : avb;
    in.jobs.push_back(job);
  }
  in.setups = SetupMatrix(n, m);
  for (int l = 1; l <= m; ++l) {
    for (int i = 1; i <= n; ++i) {
      in.setups.set_initial(i, l, Draw(rng, 0, 60));
      for (int j = 1; j <= n; ++j) {
        if (i != j) in.setups.set_between(i, j, l, Draw(rng, 0, 80));
      }
    }
  }
  for (int k = 1; k <= K; ++k) {
    Personnel p{k, {}};
    for (int t = 1; t <= T; ++t) {
      Minutes start = 0, end = avb;
      if (Draw(rng, 0, 2) == 0) {
        start = Draw(rng, 0, static_cast<int>(avb / 2));
        end = Draw(rng, static_cast<int>(start), static_cast<int>(avb));
      }
      p.windows.push_back({start, end});
    }
    in.personnel.push_back(p);
  }
  return in;
}

/// Bare instance: setups zero, every window [0, AVB], no eligibility.
inline Instance empty_instance(int jobs, int machines, int periods, int personnel,
                               Minutes avb = 2250, int positions = 2) {
  Instance in;
  for (int t = 1; t <= periods; ++t) in.periods.push_back({t, avb});
  for (int l = 1; l <= machines; ++l) in.machines.push_back({l, positions, {}});
  for (int i = 1; i <= jobs; ++i) {
    Job job;
    job.id = i;
    job.delivery_period = periods;
    job.delivery_time = avb;
    in.jobs.push_back(job);
  }
  in.setups = SetupMatrix(jobs, machines);
  for (int k = 1; k <= personnel; ++k) {
    Personnel p{k, {}};
    for (int t = 1; t <= periods; ++t) p.windows.push_back({0, avb});
    in.personnel.push_back(p);
  }
  return in;
}

/// Three machines where concurrency is forced: jobs 1 and 2 (machines 1
/// and 2) and job 3 all fit period 1 only as parallel single-job runs; job
/// 4 runs on machine 3 in period 2 and must finish by 800. With three
/// personnel job 3 runs on machine 3 in period 1 and the carry-over setup
/// 3 -> 4 costs 10. With two personnel job 3 is pushed into period 2, where
/// every option costs a 200-minute changeover.
inline Instance crew_instance(int personnel) {
  Instance in = empty_instance(4, 3, 2, personnel, 1000);
  auto set = [&](int i, std::initializer_list<int> machines) {
    for (int l : machines) in.jobs[i - 1].processing[l] = 800;
  };
  set(1, {1});
  set(2, {2});
  set(3, {1, 2, 3});
  set(4, {3});
  in.jobs[0].delivery_period = 1;
  in.jobs[1].delivery_period = 1;
  in.jobs[3].release_period = 2;
  in.jobs[3].delivery_time = 800;
  for (int l = 1; l <= 3; ++l) {
    for (int i = 1; i <= 4; ++i) {
      for (int j = 1; j <= 4; ++j) {
        if (i != j) in.setups.set_between(i, j, l, 200);
      }
    }
  }
  in.setups.set_between(3, 4, 3, 10);
  return in;
}

/// One personnel, two machines. Job 3 (machine 2) must run inside
/// [450, 1800]; jobs 1 and 2 (machine 1) cannot all fit before or after it,
/// so machine 1 runs twice. Setups: S^I = 20, S_12 = 10, S_21 = 40.
inline Instance split_run_instance() {
  Instance in = empty_instance(3, 2, 1, 1, 2250);
  in.jobs[0].processing[1] = 400;
  in.jobs[1].processing[1] = 400;
  in.jobs[2].processing[2] = 1300;
  in.jobs[2].release_time = 450;
  in.jobs[2].delivery_time = 1800;
  for (int i = 1; i <= 3; ++i) {
    for (int l = 1; l <= 2; ++l) in.setups.set_initial(i, l, 20);
  }
  in.setups.set_between(1, 2, 1, 10);
  in.setups.set_between(2, 1, 1, 40);
  return in;
}

}  // namespace upms::testing
