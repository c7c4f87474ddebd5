#include "upms/instancegen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace upms {

namespace {

// Redraws of one job's time window before falling back to the full horizon.
constexpr int kWindowAttempts = 64;

struct Point {
  double x = 0, y = 0;
};

double Distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Longest stretch of one period inside the job's window.
Minutes LongestOpening(const Job& j, Minutes avb) {
  Minutes best = 0;
  for (int t = j.release_period; t <= j.delivery_period; ++t) {
    const Minutes from = t == j.release_period ? j.release_time : 0;
    const Minutes to = t == j.delivery_period ? j.delivery_time : avb;
    best = std::max(best, to - from);
  }
  return best;
}

}  // namespace

std::int64_t GenRng::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("empty draw range");
  const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  if (range == 0) return static_cast<std::int64_t>(next());
  // Values below the threshold would bias the low residues.
  const std::uint64_t threshold = (0 - range) % range;
  for (;;) {
    const std::uint64_t x = next();
    if (x >= threshold) return lo + static_cast<std::int64_t>(x % range);
  }
}

double GenRng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::vector<std::string> validate_params(const GenParams& p) {
  std::vector<std::string> out;
  if (p.jobs < 1 || p.machines < 1 || p.periods < 1 || p.personnel < 1) {
    out.push_back("jobs, machines, periods and personnel must be positive");
    return out;
  }
  if (p.positions < 1) out.push_back("positions per period must be positive");
  if (p.jobs < 15 * p.machines * p.periods) {
    out.push_back("jobs per machine and period is " +
                  std::to_string(static_cast<double>(p.jobs) / (p.machines * p.periods)) +
                  ", below 15");
  }
  if (p.personnel >= p.machines) {
    out.push_back("personnel (" + std::to_string(p.personnel) +
                  ") must be fewer than machines (" + std::to_string(p.machines) + ")");
  }
  if (p.machines > 3 * p.personnel) {
    out.push_back("machines per personnel exceeds 3");
  }
  return out;
}

double mean_value(const GenParams& p) {
  const double total = static_cast<double>(p.personnel) * p.periods * kWeekMinutes;
  const double avg = static_cast<double>(p.jobs) / p.machines;
  return total / (p.machines * (2 * avg - 1));
}

TimeBounds time_bounds(const GenParams& params) {
  const double m = mean_value(params);
  // A hair of tolerance keeps exact thirds from rounding the wrong way.
  const double eps = 1e-9;
  return {static_cast<Minutes>(std::ceil(2 * m / 3 - eps)),
          static_cast<Minutes>(std::floor(4 * m / 3 + eps))};
}

Instance generate_instance(const GenParams& p) {
  const auto defects = validate_params(p);
  if (!defects.empty()) {
    std::string msg = "invalid generator parameters:";
    for (const auto& d : defects) msg += "\n  " + d;
    throw std::invalid_argument(msg);
  }
  const TimeBounds b = time_bounds(p);
  GenRng rng(p.seed);
  const int n = p.jobs, m = p.machines;

  Instance in;
  for (int t = 1; t <= p.periods; ++t) in.periods.push_back({t, kWeekMinutes});
  for (int l = 1; l <= m; ++l) in.machines.push_back({l, p.positions, {}});

  // Each job's only machine: a shuffled round-robin keeps loads within one.
  std::vector<int> home(n + 1, 0);
  if (p.eligibility) {
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i + 1;
    for (int i = n - 1; i > 0; --i) {
      std::swap(order[i], order[rng.uniform_int(0, i)]);
    }
    for (int x = 0; x < n; ++x) home[order[x]] = x % m + 1;
  }

  for (int i = 1; i <= n; ++i) {
    Job job;
    job.id = i;
    for (int l = 1; l <= m; ++l) {
      if (p.eligibility && home[i] != l) continue;
      job.processing[l] = rng.uniform_int(b.lower, b.upper);
    }
    job.release_period = 1;
    job.release_time = 0;
    job.delivery_period = p.periods;
    job.delivery_time = kWeekMinutes;
    in.jobs.push_back(std::move(job));
  }

  in.setups = SetupMatrix(n, m);
  std::vector<std::vector<Point>> at(m + 1, std::vector<Point>(n + 1));
  std::vector<std::vector<double>> offset(m + 1, std::vector<double>(n + 1));
  for (int l = 1; l <= m; ++l) {
    for (int i = 1; i <= n; ++i) at[l][i] = {rng.unit(), rng.unit()};
  }
  for (int l = 1; l <= m; ++l) {
    for (int i = 1; i <= n; ++i) offset[l][i] = rng.unit();
  }
  for (int l = 1; l <= m; ++l) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        if (i == j) continue;
        const double raw = Distance(at[l][i], at[l][j]) + offset[l][j];
        lo = std::min(lo, raw);
        hi = std::max(hi, raw);
      }
    }
    for (int i = 1; i <= n; ++i) {
      in.setups.set_initial(i, l, b.upper);
      for (int j = 1; j <= n; ++j) {
        if (i == j) continue;
        const double raw = Distance(at[l][i], at[l][j]) + offset[l][j];
        const double frac = hi > lo ? (raw - lo) / (hi - lo) : 0.0;
        const auto span = static_cast<double>(b.upper - b.lower);
        in.setups.set_between(i, j, l, b.lower + static_cast<Minutes>(std::floor(frac * span + 0.5)));
      }
    }
  }

  if (p.time_windows) {
    const Minutes avb = kWeekMinutes;
    for (Job& job : in.jobs) {
      Minutes need = std::numeric_limits<Minutes>::max();
      for (const auto& [l, proc] : job.processing) {
        need = std::min(need, in.initial_setup(job.id, l) + proc);
      }
      bool alive = false;
      for (int attempt = 0; attempt < kWindowAttempts && !alive; ++attempt) {
        job.release_period = static_cast<int>(rng.uniform_int(1, p.periods));
        job.release_time = rng.uniform_int(0, avb / 3);
        job.delivery_period = static_cast<int>(rng.uniform_int(job.release_period, p.periods));
        job.delivery_time = rng.uniform_int((2 * avb + 2) / 3, avb);
        alive = LongestOpening(job, avb) >= need;
      }
      if (!alive) {
        job.release_period = 1;
        job.release_time = 0;
        job.delivery_period = p.periods;
        job.delivery_time = avb;
      }
    }
  }

  for (int k = 1; k <= p.personnel; ++k) {
    Personnel person{k, {}};
    for (int t = 1; t <= p.periods; ++t) person.windows.push_back({0, kWeekMinutes});
    in.personnel.push_back(std::move(person));
  }
  return in;
}

std::string instance_file_name(const GenParams& p) {
  return "J" + std::to_string(p.jobs) + "_M" + std::to_string(p.machines) + "_P" +
         std::to_string(p.periods) + "_K" + std::to_string(p.personnel) + "_tw" +
         (p.time_windows ? "1" : "0") + "_el" + (p.eligibility ? "1" : "0") + "_s" +
         std::to_string(p.seed) + ".json";
}

std::vector<GenParams> benchmark_grid(std::uint64_t seed) {
  std::vector<GenParams> out;
  for (int jobs : {30, 50, 60, 75, 90, 100, 120}) {
    for (int machines = 2; machines <= 8; ++machines) {
      for (int periods = 1; periods <= 3; ++periods) {
        for (int personnel = 1; personnel <= 7; ++personnel) {
          for (bool tw : {false, true}) {
            for (bool el : {false, true}) {
              GenParams p{jobs, machines, periods, personnel, tw, el, seed};
              if (validate_params(p).empty()) out.push_back(p);
            }
          }
        }
      }
    }
  }
  return out;
}

}  // namespace upms
