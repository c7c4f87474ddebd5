#include <set>

#include "doctest.h"
#include "support/fixtures.hpp"
#include "support/mutations.hpp"
#include "upms/oracle.hpp"
#include "upms/validator.hpp"

using namespace upms;

TEST_CASE("each targeted mutation fires exactly its code") {
  std::set<Code> covered;
  for (const testing::MutationCase& c : testing::mutation_suite()) {
    CAPTURE(c.name);
    const ViolationReport base = validate_schedule(c.base_instance, c.base, c.mode);
    CHECK_MESSAGE(base.is_feasible(), explain(base));
    const ViolationReport v = validate_schedule(c.instance, c.mutated, c.mode);
    CHECK_MESSAGE(v.codes() == c.expected, explain(v));
    covered.insert(c.expected.begin(), c.expected.end());
  }
  CHECK(covered.size() == std::size(kAllCodes));
}

TEST_CASE("code names round-trip") {
  for (Code c : kAllCodes) CHECK(code_from_name(code_name(c)) == c);
  CHECK(code_name(Code::kPersNoOverlap) == "C-PERS-NOOVL");
  CHECK_THROWS(code_from_name("C-NOPE"));
}

TEST_CASE("a step-2 feasible schedule is step-1 feasible") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Instance in = testing::random_instance(seed);
    const SolveReport r = exact_solve(in, Mode::kStep1);
    const Schedule& s = r.schedule;
    if (validate_schedule(in, s, Mode::kStep2).is_feasible()) {
      CHECK(validate_schedule(in, s, Mode::kStep1).is_feasible());
    }
    CHECK(validate_schedule(in, s, Mode::kStep1).is_feasible());
  }
}

TEST_CASE("explain orders violations and says feasible when clean") {
  CHECK(explain(ViolationReport{}).rfind("feasible", 0) == 0);
  const testing::MutationCase c = testing::mutation_suite().front();
  CHECK(explain(validate_schedule(c.instance, c.mutated, c.mode)).find("STRUCT") == 0);
}
