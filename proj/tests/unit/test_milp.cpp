#include <map>
#include <string>

#include "doctest.h"
#include "support/fixtures.hpp"
#include "upms/lp_format.hpp"
#include "upms/milp.hpp"
#include "upms/oracle.hpp"
#include "upms/tssa.hpp"
#include "upms/validator.hpp"

using namespace upms;
using upms::testing::empty_instance;
using upms::testing::uniform_instance;

namespace {

int count_prefix(const ModelIR& m, const std::string& prefix) {
  int c = 0;
  for (const Variable& v : m.variables()) c += v.name.rfind(prefix + "_", 0) == 0;
  return c;
}

std::string family(const std::string& name) { return name.substr(0, name.find('_')); }

// Constraint rows per family, counted from the index sets alone. Valid for
// instances with at least two jobs and one personnel.
std::map<std::string, long> expected_rows(const Instance& in) {
  const long n = in.job_count(), m = in.machine_count(), T = in.period_count();
  const long K = in.personnel_count(), P = in.position_count();
  const long S = P * T;
  long chained = 0;  // adjacent position pairs over all machines
  for (const Machine& mc : in.machines) chained += mc.positions_per_period - 1;
  long restricted = 0;
  for (int l = 1; l <= m; ++l) {
    for (int i = 1; i <= n; ++i) {
      if (!in.eligible(i, l)) {
        ++restricted;
        break;
      }
    }
  }
  std::map<std::string, long> rows = {
      {"alloc", n},
      {"elig", restricted},
      {"dur", n * S},
      {"horizon", n * S},
      {"seqgap", n * (n - 1) * S},
      {"onebeg", S},
      {"oneend", S},
      {"pred", n * S},
      {"succ", n * S},
      {"relperiod", n * (T - 1)},
      {"delperiod", n * T},
      {"reltime", n},
      {"deltime", n},
      {"perspresent", S},
      {"persone", P * T},
      {"posorder", chained * T},
      {"persdur", S},
      {"persend", K * P * T},
      {"persstart", K * P * T},
      {"coverstart", n * S},
      {"coverend", n * S},
      {"routegap", K * P * (P - 1) * T},
      {"rankgap", chained * T},
      {"routebeg", K * T},
      {"routeend", K * T},
      {"routepred", K * P * T},
      {"routesucc", K * P * T},
      {"winstart", K * P * T},
      {"winend", K * P * T},
      {"connpos", (n + 1) * chained * T},
      {"connper", (n + 1) * m * T - m},
      {"connanchor", T >= 2 ? m : 0},
  };
  return rows;
}

}  // namespace

TEST_CASE("variable cardinalities") {
  const Instance one = uniform_instance(1, 1, 1, 1, 2250, 1);
  const ModelIR a = build_step2_model(one);
  CHECK(count_prefix(a, "AJ") == 1);
  CHECK(count_prefix(a, "SJ") == 0);
  const Instance two = uniform_instance(2, 1, 1, 1, 2250, 1);
  CHECK(count_prefix(build_step2_model(two), "SJ") == 2);
}

TEST_CASE("single-run encoding has one begin and end of each kind") {
  const Instance in = uniform_instance(1, 1, 1, 1, 2250, 1);
  const SolveReport r = exact_solve(in, Mode::kStep2);
  const Assignment a = encode_schedule(in, r.schedule);
  for (const char* p : {"BJ", "EJend", "AP", "BP", "EP"}) {
    int ones = 0;
    for (const auto& [name, v] : a) ones += name.rfind(std::string(p) + "_", 0) == 0 && v == 1;
    CHECK_MESSAGE(ones == 1, p);
  }
  CHECK(a.count("EJend_1_0_1_1_1") == 1);
  CHECK(decode_assignment(in, {}) == Schedule{});
}

TEST_CASE("constraint tally matches an index-set count") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    CAPTURE(seed);
    upms::testing::RandomShape shape;
    shape.positions = 1 + static_cast<int>(seed % 2);
    Instance in = upms::testing::random_instance(seed, shape);
    if (in.job_count() < 2) continue;
    const ModelIR model = build_step2_model(in);
    std::map<std::string, long> seen;
    for (const Constraint& c : model.constraints()) ++seen[family(c.name)];
    std::map<std::string, long> want = expected_rows(in);
    for (auto it = want.begin(); it != want.end();) {
      it = it->second == 0 ? want.erase(it) : std::next(it);
    }
    CHECK(seen == want);
  }
}

TEST_CASE("step 1 relaxes allocation and flips the objective") {
  const Instance in = uniform_instance(3, 2, 1, 1);
  const ModelIR s1 = build_step1_model(in);
  const ModelIR s2 = build_step2_model(in);
  CHECK(s1.objective().maximize);
  CHECK_FALSE(s2.objective().maximize);
  CHECK(check_assignment(s1, {}).ok());
  CHECK_FALSE(check_assignment(s2, {}).ok());
  CHECK(s1.variables() == s2.variables());
  CHECK(s1.constraints().size() == s2.constraints().size());
}

TEST_CASE("step-2 feasible assignments are step-1 feasible") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Instance in = upms::testing::random_instance(seed);
    const SolveReport r = exact_solve(in, Mode::kStep2);
    if (r.status != SolveStatus::kAllScheduled) continue;
    const Assignment a = encode_schedule(in, r.schedule);
    CHECK(check_assignment(build_step2_model(in), a).ok());
    CHECK(check_assignment(build_step1_model(in), a).ok());
  }
}

TEST_CASE("overload leaves the step-1 optimum short") {
  Instance in = empty_instance(3, 1, 1, 1);
  for (int i = 1; i <= 3; ++i) in.jobs[i - 1].processing[1] = 1000;
  const SolveReport r = exact_solve(in, Mode::kStep1);
  CHECK(r.accepted_count == 2);
  const Assignment a = encode_schedule(in, r.schedule);
  CHECK(build_step1_model(in).objective_value(a) == 2);
}

TEST_CASE("LP text round-trips") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Instance in = upms::testing::random_instance(seed);
    for (Mode mode : {Mode::kStep1, Mode::kStep2}) {
      const ModelIR model = build_model(in, mode);
      const ModelIR back = parse_lp(export_lp(model));
      CHECK(back.same_terms(model));
    }
  }
}

TEST_CASE("single binary model lists one binary") {
  ModelIR m;
  LinearExpr e;
  e.add(m.add_variable("x", VarKind::kBinary, 0, 1), 1);
  m.set_objective(true, e);
  const std::string text = export_lp(m);
  const auto at = text.find("Binaries");
  REQUIRE(at != std::string::npos);
  const std::string tail = text.substr(at);
  CHECK(tail == "Binaries\n x\nEnd\n");
}

TEST_CASE("solution import") {
  const Instance in = uniform_instance(1, 1, 1, 1, 2250, 1);
  const ModelIR model = build_step2_model(in);
  CHECK(import_solution("", model).values.empty());
  const ImportedSolution one = import_solution("# header\nAJ_1_1_1_1 1.0\n", model);
  CHECK(one.values.at("AJ_1_1_1_1") == 1);
  const ImportedSolution fuzzy = import_solution("AJ_1_1_1_1 0.9999\n", model);
  CHECK(fuzzy.values.at("AJ_1_1_1_1") == 1);
  CHECK(fuzzy.fractional_binaries == 1);
  try {
    import_solution("AJ_1_1_1_1 1\nnope 3\n", model);
    FAIL("expected a parse error");
  } catch (const LpParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }

  const SolveReport r = exact_solve(in, Mode::kStep2);
  const Assignment a = encode_schedule(in, r.schedule);
  const ImportedSolution back = import_solution(write_solution(model, a), model);
  const Schedule s = decode_assignment(in, back.values);
  CHECK(validate_schedule(in, s, Mode::kStep2).is_feasible());
  CHECK(model.objective_value(back.values) == total_production_time(in, s).total);
}

TEST_CASE("two-step solve on small instances") {
  SolveConfig config;
  const Instance four = uniform_instance(4, 2, 1, 1);
  const SolveReport r = tssa_solve(four, config);
  CHECK(r.status == SolveStatus::kAllScheduled);
  CHECK(r.accepted_count == 4);
  CHECK(r.objective.total == exact_solve(four, Mode::kStep2).objective.total);
  CHECK(r.objective.total <= r.step1_objective.total);
  CHECK(r.gap == 0.0);

  Instance over = empty_instance(2, 1, 1, 1);
  for (int i = 1; i <= 2; ++i) over.jobs[i - 1].processing[1] = 2000;
  const SolveReport o = tssa_solve(over, config);
  CHECK(o.status == SolveStatus::kInfeasibleSubset);
  CHECK(o.accepted_count == 1);
  CHECK_FALSE(o.step2_run);
}

TEST_CASE("solve config defaults and checks") {
  SolveConfig c;
  CHECK(c.step1_time_limit == 2700);
  CHECK(c.step2_time_limit == 1800);
  CHECK(c.step2_gap_target == 0.05);
  CHECK(validate_config(c).empty());
  c.step2_gap_target = 1.0;
  c.step1_time_limit = 0;
  CHECK(validate_config(c).size() == 2);
}
