// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Optional arguments select criteria by number.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "support/equivalence.hpp"
#include "support/fixtures.hpp"
#include "support/mutations.hpp"
#include "upms/instancegen.hpp"
#include "upms/json_io.hpp"
#include "upms/lp_format.hpp"
#include "upms/milp.hpp"
#include "upms/oracle.hpp"
#include "upms/report.hpp"
#include "upms/tssa.hpp"
#include "upms/validator.hpp"

namespace fs = std::filesystem;
using namespace upms;
using namespace upms::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string summary;
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (failures.size() < 8) failures.push_back(what);
  }
};

std::string str(double x) {
  std::ostringstream o;
  o << x;
  return o.str();
}

SolveConfig native_config() {
  SolveConfig c;
  c.backend = Backend::kNative;
  return c;
}

/// The 100 guard instances shared by criteria 1 and 3.
std::vector<Instance> guard_suite() {
  std::vector<Instance> out;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) out.push_back(random_instance(seed));
  return out;
}

// The enumeration optimum is an independent oracle for tiny instances.
bool small_enough(const Instance& in) { return in.job_count() <= 3 && in.machine_count() <= 2; }

Outcome oracle_agreement() {
  Outcome o;
  int all = 0, subset = 0, enumerated = 0;
  for (const Instance& in : guard_suite()) {
    const std::string tag = "instance n" + std::to_string(in.job_count()) + " m" +
                            std::to_string(in.machine_count());
    const SolveReport r = tssa_solve(in, native_config());
    const SolveReport step2 = exact_solve(in, Mode::kStep2);
    const SolveReport step1 = exact_solve(in, Mode::kStep1);
    o.require(validate_schedule(in, r.schedule, r.status == SolveStatus::kAllScheduled
                                                    ? Mode::kStep2
                                                    : Mode::kStep1)
                  .is_feasible(),
              tag + ": schedule not validator-clean");
    if (step2.status == SolveStatus::kAllScheduled) {
      ++all;
      o.require(r.status == SolveStatus::kAllScheduled, tag + ": expected AllScheduled");
      o.require(r.objective.total == step2.objective.total,
                tag + ": total " + std::to_string(r.objective.total) + " vs oracle " +
                    std::to_string(step2.objective.total));
      const ModelIR model = build_step2_model(in);
      o.require(model.objective_value(encode_schedule(in, r.schedule)) ==
                    static_cast<double>(r.objective.total),
                tag + ": model objective differs from total_production_time");
    } else {
      ++subset;
      o.require(r.status == SolveStatus::kInfeasibleSubset, tag + ": expected InfeasibleSubset");
      o.require(r.accepted_count == step1.accepted_count,
                tag + ": accepted " + std::to_string(r.accepted_count) + " vs oracle " +
                    std::to_string(step1.accepted_count));
    }
    if (small_enough(in)) {
      ++enumerated;
      const EquivalenceStats e = EquivalenceChecker(in).run();
      o.require(e.best_accepted == step1.accepted_count, tag + ": enumeration disagrees on step 1");
      if (r.status == SolveStatus::kAllScheduled) {
        o.require(e.best_total && *e.best_total == static_cast<double>(r.objective.total),
                  tag + ": enumeration optimum " + (e.best_total ? str(*e.best_total) : "none"));
      } else {
        o.require(!e.best_total, tag + ": enumeration finds a complete schedule");
      }
    }
  }
  o.summary = "100 instances (" + std::to_string(all) + " all scheduled, " +
              std::to_string(subset) + " subset), tolerance 0; " + std::to_string(enumerated) +
              " also matched by exhaustive enumeration";
  return o;
}

Outcome model_equivalence() {
  Outcome o;
  long long patterns = 0, skipped = 0, feasible1 = 0, feasible2 = 0;
  // 20 random instances, often tight, and 10 roomy ones with many feasible
  // patterns.
  std::vector<std::pair<std::string, Instance>> suite;
  for (std::uint64_t seed = 1001; seed <= 1020; ++seed) {
    suite.push_back({"seed " + std::to_string(seed), random_instance(seed, RandomShape{3, 2, 2, 2, 2})});
  }
  const int shapes[10][4] = {{3, 2, 1, 1}, {3, 1, 2, 1}, {2, 2, 2, 2}, {3, 2, 2, 1}, {3, 1, 1, 2},
                             {2, 1, 2, 2}, {3, 2, 1, 2}, {2, 2, 1, 1}, {3, 1, 2, 2}, {3, 2, 2, 2}};
  for (const auto& sh : shapes) {
    Instance in = uniform_instance(sh[0], sh[1], sh[2], sh[3], 400);
    in.jobs[0].release_time = 150;
    if (sh[3] > 1) in.personnel[1].windows[0] = {100, 350};
    suite.push_back({"uniform " + std::to_string(sh[0]) + "/" + std::to_string(sh[1]) + "/" +
                         std::to_string(sh[2]) + "/" + std::to_string(sh[3]),
                     in});
  }
  int instances = 0;
  for (const auto& [tag, in] : suite) {
    ++instances;
    const EquivalenceStats e = EquivalenceChecker(in).run();
    patterns += e.patterns;
    skipped += e.skipped;
    feasible1 += e.feasible[0];
    feasible2 += e.feasible[1];
    o.require(e.mismatches == 0, tag + ": " +
                                     std::to_string(e.mismatches) + " mismatches" +
                                     (e.examples.empty() ? "" : "\n" + e.examples.front()));
  }
  o.require(feasible1 > 0 && feasible2 > 0, "no feasible pattern anywhere");
  o.summary = std::to_string(instances) + " instances, " + std::to_string(patterns) +
              " patterns (" + std::to_string(skipped) + " not decodable), " +
              std::to_string(feasible1) + " step-1 and " + std::to_string(feasible2) +
              " step-2 feasible, both modes agree";
  return o;
}

Outcome warm_start() {
  Outcome o;
  int checked = 0;
  for (const Instance& in : guard_suite()) {
    const SolveReport r = tssa_solve(in, native_config());
    if (r.status != SolveStatus::kAllScheduled) continue;
    ++checked;
    o.require(r.objective.total <= r.step1_objective.total, "step 2 worse than its warm start");
    const ModelCheck c = check_assignment(build_step2_model(in), encode_schedule(in, r.step1_schedule));
    o.require(c.ok(), "step-1 schedule violates the step-2 model" +
                          (c.violated_constraints.empty() ? std::string()
                                                          : ": " + c.violated_constraints.front()));
  }
  o.require(checked > 0, "no all-scheduled instance");
  o.summary = std::to_string(checked) + " all-scheduled instances";
  return o;
}

/// Processing long enough that some jobs cannot be placed.
Instance overload_instance(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n = Draw(rng, 3, 5);
  const int m = Draw(rng, 1, 2);
  const int T = Draw(rng, 1, 2);
  Instance in = uniform_instance(n, m, T, 1, 1000);
  for (Job& j : in.jobs) {
    for (auto& [l, p] : j.processing) p = Draw(rng, 350, 900);
  }
  return in;
}

Outcome case2_detection() {
  Outcome o;
  int found = 0;
  const fs::path root = fs::temp_directory_path() / "upms_acceptance_case2";
  fs::remove_all(root);
  for (std::uint64_t seed = 1; found < 20 && seed < 500; ++seed) {
    const Instance in = overload_instance(seed);
    const SolveReport oracle = exact_solve(in, Mode::kStep1);
    if (oracle.accepted_count == in.job_count()) continue;
    ++found;
    const std::string tag = "overload seed " + std::to_string(seed);
    const SolveReport r = tssa_solve(in, native_config());
    o.require(r.status == SolveStatus::kInfeasibleSubset, tag + ": native status");
    o.require(r.accepted_count == oracle.accepted_count, tag + ": native accepted count");
    o.require(!r.step2_run && r.step2_seconds == 0, tag + ": step 2 ran");

    const fs::path dir = root / std::to_string(seed);
    fs::create_directories(dir);
    const fs::path sol = dir.parent_path() / (std::to_string(seed) + ".sol");
    write_text_file(sol, write_solution(build_step1_model(in), encode_schedule(in, r.schedule)));
    SolveConfig c;
    c.backend = Backend::kExport;
    c.export_dir = dir;
    c.step1_solution = sol;
    const SolveReport e = tssa_solve(in, c);
    o.require(e.status == SolveStatus::kInfeasibleSubset, tag + ": export status");
    o.require(e.accepted_count == oracle.accepted_count, tag + ": export accepted count");
    std::vector<std::string> files;
    for (const auto& f : fs::directory_iterator(dir)) files.push_back(f.path().filename().string());
    o.require(files == std::vector<std::string>{"step1.lp"}, tag + ": step-2 artifacts written");
  }
  fs::remove_all(root);
  o.require(found == 20, "only " + std::to_string(found) + " overload instances");
  o.summary = std::to_string(found) + " overload instances, native and export backends";
  return o;
}

Outcome generator_fidelity() {
  Outcome o;
  // Rule enforcement over the full grid, including invalid combinations.
  int rejected = 0;
  for (int j : {30, 50, 60, 75, 90, 100, 120}) {
    for (int m = 2; m <= 8; ++m) {
      for (int t = 1; t <= 3; ++t) {
        for (int k = 1; k <= m + 1; ++k) {
          GenParams p;
          p.jobs = j;
          p.machines = m;
          p.periods = t;
          p.personnel = k;
          const bool valid = j >= 15 * m * t && k < m && m <= 3 * k;
          rejected += !valid;
          o.require(validate_params(p).empty() == valid,
                    "rules disagree for " + instance_file_name(p));
        }
      }
    }
  }

  int count = 0;
  double ratio_sum = 0;
  long long ratio_n = 0;
  for (std::uint64_t seed = 1; count < 1000; ++seed) {
    for (const GenParams& p : benchmark_grid(seed)) {
      if (count == 1000) break;
      ++count;
      const std::string tag = instance_file_name(p);
      const Instance in = generate_instance(p);
      const TimeBounds b = time_bounds(p);
      const double mean = mean_value(p);
      o.require(b.lower == static_cast<Minutes>(std::ceil(2 * mean / 3 - 1e-9)) &&
                    b.upper == static_cast<Minutes>(std::floor(4 * mean / 3 + 1e-9)),
                tag + ": bounds");
      o.require(validate_instance(in).empty(), tag + ": invalid instance");
      auto in_bounds = [&](Minutes v) { return v >= b.lower && v <= b.upper; };
      for (const Job& job : in.jobs) {
        for (const auto& [l, v] : job.processing) {
          o.require(in_bounds(v), tag + ": processing out of bounds");
          ratio_sum += static_cast<double>(v) / mean;
          ++ratio_n;
        }
      }
      const int n = in.job_count();
      for (int l = 1; l <= in.machine_count(); ++l) {
        for (int i = 1; i <= n; ++i) {
          o.require(in_bounds(in.initial_setup(i, l)), tag + ": initial setup out of bounds");
          for (int j = 1; j <= n; ++j) {
            if (i == j) continue;
            const Minutes s = in.setup(i, j, l);
            o.require(in_bounds(s), tag + ": setup out of bounds");
            for (int h = 1; h <= n; ++h) {
              if (h != i && h != j && in.setup(i, h, l) > s + in.setup(j, h, l)) {
                o.require(false, tag + ": triangle inequality");
              }
            }
          }
        }
      }
      o.require(instance_to_json(generate_instance(p)).dump() == instance_to_json(in).dump(),
                tag + ": regeneration differs");
    }
  }
  const double pooled = ratio_sum / static_cast<double>(ratio_n);
  o.require(std::fabs(pooled - 1) <= 0.05, "processing mean ratio " + str(pooled));
  o.summary = std::to_string(count) + " instances; " + std::to_string(rejected) +
              " invalid parameter sets rejected; processing mean / formula mean = " + str(pooled) +
              " over " + std::to_string(ratio_n) + " draws";
  return o;
}

Outcome objective_decomposition() {
  Outcome o;
  int checked = 0;
  for (const Instance& in : guard_suite()) {
    const SolveReport r = tssa_solve(in, native_config());
    const ProductionTime p = total_production_time(in, r.schedule);
    o.require(p.total == p.processing + p.setup, "decomposition broken");
    o.require(p == r.objective, "report objective differs");
    ++checked;
  }
  // The case-study breakdown as a formula check on a hand-built schedule.
  Instance in = empty_instance(2, 1, 1, 1, 9000);
  in.jobs[0].processing[1] = 3000;
  in.jobs[1].processing[1] = 2963;
  in.setups.set_initial(1, 1, 1500);
  in.setups.set_between(1, 2, 1, 1478);
  Skeleton sk;
  sk.runs.push_back({1, 1, 1, {1, 2}, 1});
  sk.routes = {{1, 1, {1}}};
  const auto s = earliest_start_assignment(in, sk);
  o.require(s.has_value(), "anchor schedule not timed");
  if (s) {
    const ProductionTime p = total_production_time(in, *s);
    o.require(p.total == 8941 && p.processing == 5963 && p.setup == 2978,
              "anchor " + std::to_string(p.total) + " = " + std::to_string(p.processing) + " + " +
                  std::to_string(p.setup));
    o.require(validate_schedule(in, *s, Mode::kStep2).is_feasible(), "anchor schedule invalid");
  }
  o.summary = std::to_string(checked) + " solved schedules, tolerance 0; 8941 = 5963 + 2978";
  return o;
}

Outcome utilization_anchor() {
  Outcome o;
  auto row = [](const std::string& name, Minutes production, Minutes available) {
    SweepRow r;
    r.name = name;
    r.status = SolveStatus::kAllScheduled;
    r.production = production;
    r.available = available;
    r.utilization = utilization_ratio(production, available);
    return r;
  };
  const std::string csv = sweep_csv({row("base", 8941, 13500), row("A", 8941, 9450)});
  std::vector<std::vector<std::string>> table;
  std::istringstream lines(csv);
  for (std::string line; std::getline(lines, line);) {
    std::vector<std::string> cells;
    std::istringstream cs(line);
    for (std::string cell; std::getline(cs, cell, ',');) cells.push_back(cell);
    table.push_back(cells);
  }
  o.require(table.size() == 3 && table[0].size() > 8 && table[0][8] == "utilization_percent",
            "unexpected CSV layout");
  if (o.pass) {
    o.require(table[1][8] == "66", "base renders " + table[1][8]);
    o.require(table[2][8] == "95", "scenario A renders " + table[2][8]);
  }
  o.summary = "8941/13500 -> " + (o.pass ? table[1][8] : std::string("?")) + "%, 8941/9450 -> " +
              (o.pass ? table[2][8] : std::string("?")) + "%";
  return o;
}

Outcome crew_property() {
  Outcome o;
  const Instance three = crew_instance(3), two = crew_instance(2);
  const SolveReport a = tssa_solve(three, native_config());
  const SolveReport b = tssa_solve(two, native_config());
  o.require(a.status == SolveStatus::kAllScheduled && b.status == SolveStatus::kAllScheduled,
            "crew instances not fully scheduled");
  o.require(a.objective.total < b.objective.total, "three personnel not strictly better");
  const ViolationReport v = validate_schedule(two, a.schedule, Mode::kStep2);
  o.require(v.has(Code::kPersOne), "three-parallel schedule does not raise C-PERS-ONE");
  o.summary = "3 personnel " + std::to_string(a.objective.total) + " < 2 personnel " +
              std::to_string(b.objective.total) + "; C-PERS-ONE raised";
  return o;
}

Outcome connectivity_property() {
  Outcome o;
  // Split run within a period.
  {
    const Instance in = split_run_instance();
    const SolveReport r = tssa_solve(in, native_config());
    std::vector<PositionRun> m1;
    for (const PositionRun& run : r.schedule.runs) {
      if (run.machine == 1 && !run.jobs.empty()) m1.push_back(run);
    }
    o.require(r.status == SolveStatus::kAllScheduled && m1.size() == 2, "machine 1 not run twice");
    if (m1.size() == 2) {
      std::sort(m1.begin(), m1.end());
      const int last = m1[0].jobs.back(), first = m1[1].jobs.front();
      o.require(m1[0].successor == first, "run 1 does not name run 2's first job");
      const ProductionTime head = run_production_time(in, m1[0]);
      Minutes inner = in.initial_setup(m1[0].jobs.front(), 1);
      for (std::size_t x = 0; x + 1 < m1[0].jobs.size(); ++x) {
        inner += in.setup(m1[0].jobs[x], m1[0].jobs[x + 1], 1);
      }
      o.require(head.setup - inner == in.setup(last, first, 1), "boundary setup not S(last, first)");
    }
    o.require(r.objective.total == 2170, "split-run optimum " + std::to_string(r.objective.total));
  }
  // Idle middle period: the setup 1 -> 2 crosses period 2 through AuxVar.
  {
    Instance in = uniform_instance(2, 1, 3, 1);
    in.setups.set_between(1, 2, 1, 37);
    in.jobs[0].release_period = in.jobs[0].delivery_period = 1;
    in.jobs[1].release_period = in.jobs[1].delivery_period = 3;
    Skeleton sk;
    sk.runs.push_back({1, 1, 1, {1}, 1});
    sk.runs.push_back({1, 1, 3, {2}, 1});
    sk.routes = {{1, 1, {1}}, {1, 3, {1}}};
    const auto s = earliest_start_assignment(in, sk);
    o.require(s.has_value(), "idle-period schedule not timed");
    if (s) {
      o.require(validate_schedule(in, *s, Mode::kStep2).is_feasible(), "idle-period schedule invalid");
      // Idle period 2 is carried by AuxVar index v = 1.
      o.require(s->aux_links == std::vector<AuxLink>{{2, 1, 1}},
                "aux chain is not the single link (job 2, machine 1, v 1)");
      const ProductionTime head = run_production_time(in, s->runs.front());
      o.require(s->runs.front().successor == 2 && head.setup == 20 + 37,
                "period-1 run does not charge S(1,2)");
      const ProductionTime p = total_production_time(in, *s);
      o.require(p.setup == 20 + 37 + 20, "setup total " + std::to_string(p.setup));
      const ModelIR model = build_step2_model(in);
      const Assignment a = encode_schedule(in, *s);
      o.require(check_assignment(model, a).ok(), "encoded schedule violates the model");
      o.require(model.objective_value(a) == static_cast<double>(p.total), "model objective differs");
      Schedule broken = *s;
      broken.aux_links.clear();
      o.require(validate_schedule(in, broken, Mode::kStep2).codes() ==
                    std::vector<Code>{Code::kConnectPeriod},
                "removing the link does not raise exactly C-CONNECT-PERIOD");
      o.require(!check_assignment(model, encode_schedule(in, broken)).ok(),
                "model accepts the schedule without its link");
      const SolveReport r = tssa_solve(in, native_config());
      o.require(r.status == SolveStatus::kAllScheduled && r.objective.total == p.total,
                "solver total " + std::to_string(r.objective.total));
    }
  }
  o.summary = "split run 2170 with boundary S(1,2); idle period carries S(1,2) = 37 via one AuxVar link";
  return o;
}

Outcome mutation_completeness() {
  Outcome o;
  std::set<Code> covered;
  const auto suite = mutation_suite();
  for (const MutationCase& c : suite) {
    o.require(validate_schedule(c.base_instance, c.base, c.mode).is_feasible(),
              c.name + ": base not clean");
    const ViolationReport v = validate_schedule(c.instance, c.mutated, c.mode);
    o.require(v.codes() == c.expected, c.name + ": fired " + explain(v));
    covered.insert(c.expected.begin(), c.expected.end());
  }
  o.require(covered.size() == std::size(kAllCodes), "codes without a mutation");
  o.summary = std::to_string(suite.size()) + " mutations cover " + std::to_string(covered.size()) +
              " of " + std::to_string(std::size(kAllCodes)) + " codes, each exactly";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"oracle agreement", oracle_agreement},
      {"model/validator equivalence", model_equivalence},
      {"warm-start contract", warm_start},
      {"case-2 detection", case2_detection},
      {"generator fidelity", generator_fidelity},
      {"objective decomposition", objective_decomposition},
      {"utilization anchor", utilization_anchor},
      {"crew property", crew_property},
      {"connectivity property", connectivity_property},
      {"mutation completeness", mutation_completeness},
  };
  std::set<int> only;
  for (int a = 1; a < argc; ++a) only.insert(std::atoi(argv[a]));
  bool all = true;
  for (std::size_t x = 0; x < criteria.size(); ++x) {
    const int id = static_cast<int>(x) + 1;
    if (!only.empty() && !only.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[x].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char head[160];
    std::snprintf(head, sizeof head, "[%s] %2d %s (%.1f s): ", o.pass ? "PASS" : "FAIL", id,
                  criteria[x].first.c_str(), secs);
    std::cout << head << o.summary << "\n";
    for (const auto& f : o.failures) std::cout << "       " << f << "\n";
    std::cout.flush();
    all &= o.pass;
  }
  return all ? 0 : 1;
}
