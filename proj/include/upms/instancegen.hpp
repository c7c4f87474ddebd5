#pragma once

// Synthetic benchmark instances: processing and setup times drawn around a
// mean derived from personnel availability, optional eligibility and job
// time windows.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "upms/core.hpp"

namespace upms {

/// Weekly availability of one personnel.
inline constexpr Minutes kWeekMinutes = 2250;

struct GenParams {
  int jobs = 30;
  int machines = 2;
  int periods = 1;
  int personnel = 1;
  bool time_windows = false;
  bool eligibility = false;
  std::uint64_t seed = 1;
  int positions = 2;

  bool operator==(const GenParams&) const = default;
};

/// Rule violations; empty when the parameters may be generated.
std::vector<std::string> validate_params(const GenParams& params);

/// Average processing-plus-setup time when jobs spread evenly over the
/// machines and the whole personnel availability is spent.
double mean_value(const GenParams& params);

struct TimeBounds {
  Minutes lower = 0;
  Minutes upper = 0;
};

/// [ceil(2 mean / 3), floor(4 mean / 3)].
TimeBounds time_bounds(const GenParams& params);

/// Wraps std::mt19937_64, whose constants are fixed by the standard; the
/// bounded draws below are spelled out because the library distributions
/// differ between implementations.
class GenRng {
 public:
  explicit GenRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [lo, hi] by rejection, no modulo bias.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  /// Uniform double in [0, 1) from the top 53 bits.
  double unit();

 private:
  std::mt19937_64 engine_;
};

/// Draw order: eligibility permutation, processing times (job-major, then
/// machine), setup coordinates (machine-major, then job), destination
/// offsets (machine-major, then job), then one time window per job.
/// Throws std::invalid_argument on invalid parameters.
Instance generate_instance(const GenParams& params);

/// J{jobs}_M{machines}_P{periods}_K{personnel}_tw{0|1}_el{0|1}_s{seed}.json
std::string instance_file_name(const GenParams& params);

/// Every valid combination of the benchmark grid, all with `seed`.
std::vector<GenParams> benchmark_grid(std::uint64_t seed);

}  // namespace upms
