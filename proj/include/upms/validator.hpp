#pragma once

// Feasibility oracle for decoded schedules. Every constraint family of the
// scheduling model has a code; a schedule is feasible iff no code fires.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "upms/core.hpp"

namespace upms {

enum class Code {
  kStruct,
  kAlloc,
  kElig,
  kDur,
  kHorizon,
  kSeqGap,
  kOneBeg,
  kOneEnd,
  kChain,
  kRelease,
  kDelivery,
  kPersPresent,
  kPersOne,
  kPosOrder,
  kPersDur,
  kPersCover,
  kPersNoOverlap,
  kPersChain,
  kPersWindow,
  kConnectPos,
  kConnectPeriod,
};

inline constexpr Code kAllCodes[] = {
    Code::kStruct,        Code::kAlloc,       Code::kElig,
    Code::kDur,           Code::kHorizon,     Code::kSeqGap,
    Code::kOneBeg,        Code::kOneEnd,      Code::kChain,
    Code::kRelease,       Code::kDelivery,    Code::kPersPresent,
    Code::kPersOne,       Code::kPosOrder,    Code::kPersDur,
    Code::kPersCover,     Code::kPersNoOverlap, Code::kPersChain,
    Code::kPersWindow,    Code::kConnectPos,  Code::kConnectPeriod,
};

/// "C-DUR", "C-PERS-NOOVL", ... ("STRUCT" for structural defects).
std::string_view code_name(Code code);
/// Inverse of code_name; throws std::invalid_argument.
Code code_from_name(std::string_view name);
/// The constraint family a code stands for, in words.
std::string_view code_meaning(Code code);

/// Which allocation rule applies: step 1 accepts each job at most once,
/// step 2 requires every job exactly once.
enum class Mode { kStep1, kStep2 };

std::string_view mode_name(Mode mode);
Mode mode_from_name(std::string_view name);

struct Violation {
  Code code = Code::kStruct;
  /// (kind, id) pairs, e.g. {"job", 3}; kinds are unique within a violation.
  std::vector<std::pair<std::string, int>> entities;
  Minutes slack = 0;
  std::string detail;
};

struct ViolationReport {
  std::vector<Violation> violations;

  bool is_feasible() const { return violations.empty(); }
  bool has(Code code) const;
  std::vector<Code> codes() const;
};

ViolationReport validate_schedule(const Instance& instance,
                                  const Schedule& schedule, Mode mode);

/// One line per violation sorted by code then entity ids, or "feasible".
std::string explain(const ViolationReport& report);

}  // namespace upms
