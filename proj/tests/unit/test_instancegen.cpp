#include <algorithm>
#include <map>

#include "doctest.h"
#include "upms/instancegen.hpp"
#include "upms/json_io.hpp"

using namespace upms;

namespace {

GenParams params(int jobs, int machines, int periods, int personnel) {
  GenParams p;
  p.jobs = jobs;
  p.machines = machines;
  p.periods = periods;
  p.personnel = personnel;
  return p;
}

}  // namespace

TEST_CASE("parameter rules") {
  CHECK(validate_params(params(30, 2, 1, 1)).empty());
  const auto crowded = validate_params(params(30, 4, 1, 1));
  CHECK(std::any_of(crowded.begin(), crowded.end(),
                    [](const std::string& d) { return d.find("exceeds 3") != std::string::npos; }));
  CHECK(validate_params(params(30, 2, 1, 2)).size() == 1);
  CHECK(validate_params(params(29, 2, 1, 1)).size() == 1);
  CHECK(validate_params(params(0, 2, 1, 1)).size() == 1);
}

TEST_CASE("mean value") {
  CHECK(mean_value(params(15, 1, 1, 1)) == doctest::Approx(2250.0 / 29));
  CHECK(mean_value(params(90, 3, 3, 2)) == doctest::Approx(76.27).epsilon(1e-4));
  CHECK(mean_value(params(3, 3, 1, 1)) == doctest::Approx(2250.0 / 3));
  const TimeBounds b = time_bounds(params(90, 3, 3, 2));
  CHECK(b.lower == 51);
  CHECK(b.upper == 101);
}

TEST_CASE("bounded draws stay in range and hit both ends") {
  GenRng rng(7);
  std::map<std::int64_t, int> seen;
  for (int x = 0; x < 5000; ++x) ++seen[rng.uniform_int(3, 7)];
  CHECK(seen.size() == 5);
  CHECK(seen.begin()->first == 3);
  CHECK(seen.rbegin()->first == 7);
  for (int x = 0; x < 1000; ++x) {
    const double u = rng.unit();
    CHECK((u >= 0 && u < 1));
  }
}

TEST_CASE("generated times respect bounds and the triangle inequality") {
  for (bool el : {false, true}) {
    GenParams p = params(50, 3, 1, 1);
    p.eligibility = el;
    p.seed = 11;
    const Instance in = generate_instance(p);
    CHECK(validate_instance(in).empty());
    const TimeBounds b = time_bounds(p);
    for (const Job& j : in.jobs) {
      CHECK(j.processing.size() == (el ? 1u : 3u));
      for (const auto& [l, v] : j.processing) CHECK((v >= b.lower && v <= b.upper));
    }
    for (int l = 1; l <= 3; ++l) {
      for (int i = 1; i <= 50; ++i) {
        CHECK(in.initial_setup(i, l) == b.upper);
        for (int j = 1; j <= 50; ++j) {
          if (i == j) continue;
          const Minutes s = in.setup(i, j, l);
          CHECK((s >= b.lower && s <= b.upper));
          for (int h = 1; h <= 50; ++h) {
            if (h == i || h == j) continue;
            if (in.setup(i, h, l) > s + in.setup(j, h, l)) FAIL("triangle broken");
          }
        }
      }
    }
  }
}

TEST_CASE("setups are asymmetric") {
  const Instance in = generate_instance(params(30, 2, 1, 1));
  int differ = 0;
  for (int i = 1; i <= 30; ++i) {
    for (int j = i + 1; j <= 30; ++j) differ += in.setup(i, j, 1) != in.setup(j, i, 1);
  }
  CHECK(differ > 0);
}

TEST_CASE("eligibility spreads jobs evenly") {
  GenParams p = params(50, 3, 1, 1);
  p.eligibility = true;
  const Instance in = generate_instance(p);
  std::map<int, int> load;
  for (const Job& j : in.jobs) ++load[j.processing.begin()->first];
  for (const auto& [l, c] : load) CHECK((c == 16 || c == 17));
}

TEST_CASE("time windows leave every job a workable opening") {
  GenParams p = params(90, 2, 3, 1);
  p.time_windows = true;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    p.seed = seed;
    const Instance in = generate_instance(p);
    CHECK(validate_instance(in).empty());
    bool varied = false;
    for (const Job& j : in.jobs) {
      varied |= j.release_time > 0 || j.delivery_time < kWeekMinutes;
      Minutes need = 1 << 30, open = 0;
      for (const auto& [l, v] : j.processing) need = std::min(need, in.initial_setup(j.id, l) + v);
      for (int t = j.release_period; t <= j.delivery_period; ++t) {
        const Minutes a = t == j.release_period ? j.release_time : 0;
        const Minutes z = t == j.delivery_period ? j.delivery_time : kWeekMinutes;
        open = std::max(open, z - a);
      }
      CHECK(open >= need);
    }
    CHECK(varied);
  }
}

TEST_CASE("generation is reproducible") {
  GenParams p = params(60, 4, 1, 2);
  p.time_windows = true;
  p.eligibility = true;
  p.seed = 42;
  const std::string a = instance_to_json(generate_instance(p)).dump();
  CHECK(a == instance_to_json(generate_instance(p)).dump());
  p.seed = 43;
  CHECK(a != instance_to_json(generate_instance(p)).dump());
  CHECK_THROWS_AS(generate_instance(params(30, 4, 1, 1)), std::invalid_argument);
}

TEST_CASE("file names and the grid") {
  GenParams p = params(30, 2, 1, 1);
  p.time_windows = true;
  p.seed = 5;
  CHECK(instance_file_name(p) == "J30_M2_P1_K1_tw1_el0_s5.json");
  const auto grid = benchmark_grid(1);
  int want = 0;
  for (int j : {30, 50, 60, 75, 90, 100, 120}) {
    for (int m = 2; m <= 8; ++m) {
      for (int t = 1; t <= 3; ++t) {
        for (int k = 1; k < m; ++k) want += (j >= 15 * m * t && m <= 3 * k) ? 4 : 0;
      }
    }
  }
  CHECK(static_cast<int>(grid.size()) == want);
}
