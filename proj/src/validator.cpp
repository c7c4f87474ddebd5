#include "upms/validator.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace upms {

namespace {

struct CodeInfo {
  Code code;
  std::string_view name;
  std::string_view meaning;
};

constexpr CodeInfo kCodeInfo[] = {
    {Code::kStruct, "STRUCT", "schedule references unknown entities"},
    {Code::kAlloc, "C-ALLOC", "job allocation count"},
    {Code::kElig, "C-ELIG", "machine eligibility"},
    {Code::kDur, "C-DUR", "job duration covers its processing time"},
    {Code::kHorizon, "C-HORIZON", "job timing within the period horizon"},
    {Code::kSeqGap, "C-SEQ-GAP", "setup gap between consecutive jobs"},
    {Code::kOneBeg, "C-ONE-BEG", "one first job per position"},
    {Code::kOneEnd, "C-ONE-END", "one last job per position"},
    {Code::kChain, "C-CHAIN", "predecessor/successor chain of a position"},
    {Code::kRelease, "C-RELEASE", "release period and release time"},
    {Code::kDelivery, "C-DELIVERY", "delivery period and delivery time"},
    {Code::kPersPresent, "C-PERS-PRESENT",
     "personnel present exactly when a position runs jobs"},
    {Code::kPersOne, "C-PERS-ONE", "one valid personnel per position"},
    {Code::kPosOrder, "C-POS-ORDER", "positions of a machine used in order"},
    {Code::kPersDur, "C-PERS-DUR",
     "personnel time covers the position workload"},
    {Code::kPersCover, "C-PERS-COVER",
     "jobs inside the personnel interval incl. initial and terminal setup"},
    {Code::kPersNoOverlap, "C-PERS-NOOVL",
     "no overlap along a personnel route or between machine positions"},
    {Code::kPersChain, "C-PERS-CHAIN", "personnel route visits its positions"},
    {Code::kPersWindow, "C-PERS-WINDOW", "personnel working window"},
    {Code::kConnectPos, "C-CONNECT-POS",
     "run-to-run connectivity within a period"},
    {Code::kConnectPeriod, "C-CONNECT-PERIOD",
     "run-to-run connectivity across periods"},
};

const CodeInfo& Info(Code code) {
  for (const CodeInfo& info : kCodeInfo) {
    if (info.code == code) return info;
  }
  throw std::logic_error("unknown code");
}

using Slot = std::tuple<int, int, int>;  // machine, position, period

class Checker {
 public:
  Checker(const Instance& instance, const Schedule& schedule, Mode mode)
      : in_(instance), s_(schedule), mode_(mode) {}

  ViolationReport Run() {
    if (auto defect = StructuralDefect()) {
      report_.violations.push_back(
          {Code::kStruct, {}, 0, std::move(*defect)});
      return std::move(report_);
    }
    CheckPlacements();
    CheckChains();
    CheckRuns();
    CheckPositionOrder();
    CheckRoutes();
    CheckConnectivity();
    return std::move(report_);
  }

 private:
  void Add(Code code, std::vector<std::pair<std::string, int>> entities,
           Minutes slack, std::string detail) {
    report_.violations.push_back(
        {code, std::move(entities), slack, std::move(detail)});
  }

  bool ValidSlot(int machine, int position, int period) const {
    return machine >= 1 && machine <= in_.machine_count() && period >= 1 &&
           period <= in_.period_count() && position >= 1 &&
           position <= in_.position_count() &&
           in_.machine_of_position(position) == machine;
  }
  bool ValidJob(int job) const { return job >= 1 && job <= in_.job_count(); }

  std::optional<std::string> StructuralDefect() const {
    for (const JobPlacement& p : s_.placements) {
      if (!ValidJob(p.job) || !ValidSlot(p.machine, p.position, p.period)) {
        return "placement of job " + std::to_string(p.job) +
               " references an unknown job, machine, position or period";
      }
    }
    for (const PositionRun& r : s_.runs) {
      if (!ValidSlot(r.machine, r.position, r.period)) {
        return "run on machine " + std::to_string(r.machine) +
               " references an unknown position or period";
      }
      for (int job : r.jobs) {
        if (!ValidJob(job)) {
          return "run lists unknown job " + std::to_string(job);
        }
      }
      if (r.successor < 0 || r.successor > in_.job_count()) {
        return "run names unknown successor " + std::to_string(r.successor);
      }
      if (r.personnel < 0) return "run has a negative personnel id";
      if (r.jobs.empty() && r.personnel == 0) {
        return "run on machine " + std::to_string(r.machine) +
               " has neither jobs nor personnel";
      }
    }
    for (const PersonnelRoute& route : s_.personnel_routes) {
      if (route.personnel < 1 || route.period < 1 ||
          route.period > in_.period_count()) {
        return "personnel route references an unknown personnel or period";
      }
      for (int p : route.positions) {
        if (p < 1 || p > in_.position_count()) {
          return "personnel route lists unknown position " +
                 std::to_string(p);
        }
      }
    }
    for (const AuxLink& a : s_.aux_links) {
      if (a.job < 0 || a.job > in_.job_count() || a.machine < 1 ||
          a.machine > in_.machine_count() || a.period < 0 ||
          a.period >= in_.period_count() || in_.period_count() < 2) {
        return "aux link outside the carried-over domain";
      }
    }
    std::set<int> placed;
    for (const JobPlacement& p : s_.placements) placed.insert(p.job);
    std::set<int> accepted(s_.accepted.begin(), s_.accepted.end());
    if (placed != accepted ||
        accepted.size() != s_.accepted.size()) {
      return "accepted set differs from the placed jobs";
    }
    return std::nullopt;
  }

  void CheckPlacements() {
    std::map<int, int> count;
    for (const JobPlacement& p : s_.placements) ++count[p.job];
    for (int i = 1; i <= in_.job_count(); ++i) {
      const int c = count.count(i) ? count[i] : 0;
      if (c > 1 || (mode_ == Mode::kStep2 && c == 0)) {
        Add(Code::kAlloc, {{"job", i}}, 0,
            "allocated " + std::to_string(c) + " times");
      }
    }
    for (const JobPlacement& p : s_.placements) {
      std::vector<std::pair<std::string, int>> ids = {
          {"job", p.job},
          {"machine", p.machine},
          {"position", p.position},
          {"period", p.period}};
      const Job& job = in_.job(p.job);
      if (!in_.eligible(p.job, p.machine)) {
        Add(Code::kElig, ids, 0, "machine is not eligible for the job");
      }
      const Minutes proc = in_.processing_or_zero(p.job, p.machine);
      if (p.end - p.start < proc) {
        Add(Code::kDur, ids, proc - (p.end - p.start),
            "duration shorter than processing time");
      }
      if (p.start < 0) {
        Add(Code::kHorizon, ids, -p.start, "starts before the period");
      }
      if (p.end > in_.avb(p.period)) {
        Add(Code::kHorizon, ids, p.end - in_.avb(p.period),
            "ends after the period's available time");
      }
      if (p.period < job.release_period) {
        Add(Code::kRelease, ids, 0, "processed before its release period");
      } else if (p.period == job.release_period &&
                 p.start < job.release_time) {
        Add(Code::kRelease, ids, job.release_time - p.start,
            "starts before its release time");
      }
      if (p.period > job.delivery_period) {
        Add(Code::kDelivery, ids, 0, "processed after its delivery period");
      } else if (p.period == job.delivery_period &&
                 p.end > job.delivery_time) {
        Add(Code::kDelivery, ids, p.end - job.delivery_time,
            "ends after its delivery time");
      }
    }
  }

  void CheckChains() {
    std::map<std::tuple<int, int, int, int>, int> balance;
    for (const JobPlacement& p : s_.placements) {
      ++balance[{p.job, p.machine, p.position, p.period}];
    }
    for (const PositionRun& r : s_.runs) {
      for (int job : r.jobs) --balance[{job, r.machine, r.position, r.period}];
    }
    for (const auto& [key, diff] : balance) {
      if (diff == 0) continue;
      const auto& [job, machine, position, period] = key;
      Add(Code::kChain,
          {{"job", job},
           {"machine", machine},
           {"position", position},
           {"period", period}},
          0,
          diff > 0 ? "placed job missing from its position sequence"
                   : "sequenced job without a placement in that position");
    }
    std::map<Slot, int> per_slot;
    for (const PositionRun& r : s_.runs) {
      ++per_slot[{r.machine, r.position, r.period}];
    }
    for (const auto& [slot, count] : per_slot) {
      if (count < 2) continue;
      const auto& [machine, position, period] = slot;
      std::vector<std::pair<std::string, int>> ids = {
          {"machine", machine}, {"position", position}, {"period", period}};
      Add(Code::kOneBeg, ids, 0, "position has several first jobs");
      Add(Code::kOneEnd, ids, 0, "position has several last jobs");
    }
  }

  const JobPlacement* FindPlacement(int job, const PositionRun& r) const {
    for (const JobPlacement& p : s_.placements) {
      if (p.job == job && p.machine == r.machine &&
          p.position == r.position && p.period == r.period) {
        return &p;
      }
    }
    return nullptr;
  }

  void CheckRuns() {
    for (const PositionRun& r : s_.runs) {
      std::vector<std::pair<std::string, int>> ids = {
          {"machine", r.machine}, {"position", r.position}, {"period", r.period}};
      const int l = r.machine;
      for (std::size_t k = 1; k < r.jobs.size(); ++k) {
        const JobPlacement* a = FindPlacement(r.jobs[k - 1], r);
        const JobPlacement* b = FindPlacement(r.jobs[k], r);
        if (!a || !b) continue;
        const Minutes need = in_.setup(a->job, b->job, l);
        if (b->start - a->end < need) {
          Add(Code::kSeqGap,
              {{"job", a->job},
               {"next_job", b->job},
               {"machine", l},
               {"position", r.position},
               {"period", r.period}},
              need - (b->start - a->end), "setup gap too short");
        }
      }
      if (r.jobs.empty() || r.personnel == 0) {
        Add(Code::kPersPresent, ids, 0,
            r.jobs.empty() ? "personnel allocated to a position without jobs"
                           : "position runs jobs without personnel");
        continue;
      }
      ids.emplace_back("personnel", r.personnel);
      if (r.personnel > in_.personnel_count()) {
        Add(Code::kPersOne, ids, 0, "personnel does not exist");
        continue;
      }
      Minutes work = in_.initial_setup(r.jobs.front(), l) +
                     in_.changeover(r.jobs.back(), r.successor, l);
      for (std::size_t k = 0; k < r.jobs.size(); ++k) {
        work += in_.processing_or_zero(r.jobs[k], l);
        if (k > 0) work += in_.setup(r.jobs[k - 1], r.jobs[k], l);
      }
      const Minutes span = r.personnel_end - r.personnel_start;
      if (span < work) {
        Add(Code::kPersDur, ids, work - span,
            "personnel interval shorter than the position workload");
      }
      if (r.personnel_end > in_.avb(r.period)) {
        Add(Code::kPersDur, ids, r.personnel_end - in_.avb(r.period),
            "personnel end after the period's available time");
      }
      if (r.personnel_start > in_.avb(r.period)) {
        Add(Code::kPersDur, ids, r.personnel_start - in_.avb(r.period),
            "personnel start after the period's available time");
      }
      for (std::size_t k = 0; k < r.jobs.size(); ++k) {
        const JobPlacement* p = FindPlacement(r.jobs[k], r);
        if (!p) continue;
        const Minutes earliest =
            r.personnel_start +
            (k == 0 ? in_.initial_setup(p->job, l) : Minutes{0});
        const bool last = k + 1 == r.jobs.size();
        const Minutes latest =
            r.personnel_end -
            (last ? in_.changeover(p->job, r.successor, l) : Minutes{0});
        auto job_ids = ids;
        job_ids.emplace_back("job", p->job);
        if (p->start < earliest) {
          Add(Code::kPersCover, job_ids, earliest - p->start,
              "job starts before personnel start plus initial setup");
        }
        if (p->end > latest) {
          Add(Code::kPersCover, job_ids, p->end - latest,
              "job (plus terminal setup) ends after personnel end");
        }
      }
      // Intervals leaving [0, AVB] are reported against the horizon (or
      // the personnel duration) only; windows lie inside it.
      const Window w = in_.window(r.personnel, r.period);
      if (r.personnel_start < 0) {
        Add(Code::kHorizon, ids, -r.personnel_start,
            "personnel starts before the period");
      } else if (r.personnel_start < w.start) {
        Add(Code::kPersWindow, ids, w.start - r.personnel_start,
            "personnel starts before the working window");
      }
      if (r.personnel_end > w.end && r.personnel_end <= in_.avb(r.period)) {
        Add(Code::kPersWindow, ids, r.personnel_end - w.end,
            "personnel ends after the working window");
      }
    }
  }

  const PositionRun* FindRun(int position, int period) const {
    for (const PositionRun& r : s_.runs) {
      if (r.position == position && r.period == period) return &r;
    }
    return nullptr;
  }

  static bool Staffed(const PositionRun* r) {
    return r && !r->jobs.empty() && r->personnel > 0;
  }

  void CheckPositionOrder() {
    for (const Machine& m : in_.machines) {
      for (int t = 1; t <= in_.period_count(); ++t) {
        for (int rank = 2; rank <= m.positions_per_period; ++rank) {
          const PositionRun* cur = FindRun(in_.position_id(m.id, rank), t);
          const PositionRun* prev = FindRun(in_.position_id(m.id, rank - 1), t);
          if (cur && !cur->jobs.empty() && !(prev && !prev->jobs.empty())) {
            Add(Code::kPosOrder,
                {{"machine", m.id},
                 {"position", cur->position},
                 {"period", t}},
                0, "position used while the previous one is idle");
          }
          if (Staffed(cur) && Staffed(prev) &&
              cur->personnel_start < prev->personnel_end) {
            Add(Code::kPersNoOverlap,
                {{"machine", m.id},
                 {"position", cur->position},
                 {"period", t}},
                prev->personnel_end - cur->personnel_start,
                "position starts before the machine's previous position ends");
          }
        }
      }
    }
  }

  void CheckRoutes() {
    std::map<std::pair<int, int>, std::vector<int>> route_of;
    std::set<std::pair<int, int>> duplicated;
    for (const PersonnelRoute& route : s_.personnel_routes) {
      auto key = std::make_pair(route.personnel, route.period);
      if (route_of.count(key)) duplicated.insert(key);
      route_of[key] = route.positions;
    }
    std::map<std::pair<int, int>, std::vector<int>> staffed;
    for (const PositionRun& r : s_.runs) {
      if (!r.jobs.empty() && r.personnel > 0) {
        staffed[{r.personnel, r.period}].push_back(r.position);
      }
    }
    std::set<std::pair<int, int>> keys;
    for (const auto& [key, _] : route_of) keys.insert(key);
    for (const auto& [key, _] : staffed) keys.insert(key);
    for (const auto& key : keys) {
      const auto& [k, t] = key;
      std::vector<int> want = staffed.count(key) ? staffed[key] : std::vector<int>{};
      std::vector<int> have = route_of.count(key) ? route_of[key] : std::vector<int>{};
      std::vector<int> want_sorted = want;
      std::vector<int> have_sorted = have;
      std::sort(want_sorted.begin(), want_sorted.end());
      std::sort(have_sorted.begin(), have_sorted.end());
      if (duplicated.count(key) || want_sorted != have_sorted) {
        Add(Code::kPersChain, {{"personnel", k}, {"period", t}}, 0,
            "route does not visit exactly the personnel's positions");
        continue;
      }
      for (std::size_t idx = 1; idx < have.size(); ++idx) {
        // A position held twice is already a ONE-BEG/ONE-END defect.
        if (have[idx - 1] == have[idx]) continue;
        const PositionRun* a = FindRun(have[idx - 1], t);
        const PositionRun* b = FindRun(have[idx], t);
        if (!a || !b) continue;
        if (b->personnel_start < a->personnel_end) {
          Add(Code::kPersNoOverlap,
              {{"personnel", k},
               {"position", a->position},
               {"next_position", b->position},
               {"period", t}},
              a->personnel_end - b->personnel_start,
              "personnel starts a position before finishing the previous");
        }
      }
    }
  }

  void CheckConnectivity() {
    std::vector<PositionRun> runs;
    for (const PositionRun& r : s_.runs) {
      if (!r.jobs.empty()) runs.push_back(r);
    }
    const Connectivity expected = derive_connectivity(in_, runs);
    for (std::size_t idx = 0; idx < runs.size(); ++idx) {
      const PositionRun& r = runs[idx];
      if (r.successor == expected.successors[idx]) continue;
      // Is the true successor run in the same period?
      bool same_period = false;
      for (const PositionRun& other : runs) {
        if (other.machine == r.machine && other.period == r.period &&
            other.position > r.position) {
          same_period = true;
        }
      }
      Add(same_period ? Code::kConnectPos : Code::kConnectPeriod,
          {{"machine", r.machine},
           {"position", r.position},
           {"period", r.period},
           {"job", r.successor}},
          0,
          "run names successor " + std::to_string(r.successor) +
              " instead of " + std::to_string(expected.successors[idx]));
    }
    std::multiset<AuxLink> have(s_.aux_links.begin(), s_.aux_links.end());
    std::multiset<AuxLink> want(expected.aux_links.begin(),
                                expected.aux_links.end());
    std::vector<AuxLink> diff;
    std::set_symmetric_difference(have.begin(), have.end(), want.begin(),
                                  want.end(), std::back_inserter(diff));
    for (const AuxLink& a : diff) {
      Add(Code::kConnectPeriod,
          {{"machine", a.machine}, {"period", a.period}, {"job", a.job}}, 0,
          want.count(a) ? "missing carried-over link" : "spurious carried-over link");
    }
  }

  const Instance& in_;
  const Schedule& s_;
  Mode mode_;
  ViolationReport report_;
};

}  // namespace

std::string_view code_name(Code code) { return Info(code).name; }
std::string_view code_meaning(Code code) { return Info(code).meaning; }

Code code_from_name(std::string_view name) {
  for (const CodeInfo& info : kCodeInfo) {
    if (info.name == name) return info.code;
  }
  throw std::invalid_argument("unknown constraint code " + std::string(name));
}

std::string_view mode_name(Mode mode) {
  return mode == Mode::kStep1 ? "step1" : "step2";
}

Mode mode_from_name(std::string_view name) {
  if (name == "step1") return Mode::kStep1;
  if (name == "step2") return Mode::kStep2;
  throw std::invalid_argument("mode must be step1 or step2");
}

bool ViolationReport::has(Code code) const {
  return std::any_of(violations.begin(), violations.end(),
                     [code](const Violation& v) { return v.code == code; });
}

std::vector<Code> ViolationReport::codes() const {
  std::set<Code> unique;
  for (const Violation& v : violations) unique.insert(v.code);
  return {unique.begin(), unique.end()};
}

ViolationReport validate_schedule(const Instance& instance,
                                  const Schedule& schedule, Mode mode) {
  return Checker(instance, schedule, mode).Run();
}

std::string explain(const ViolationReport& report) {
  if (report.is_feasible()) return "feasible\n";
  std::vector<const Violation*> sorted;
  for (const Violation& v : report.violations) sorted.push_back(&v);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Violation* a, const Violation* b) {
                     return std::tie(a->code, a->entities) <
                            std::tie(b->code, b->entities);
                   });
  std::ostringstream out;
  for (const Violation* v : sorted) {
    out << code_name(v->code) << " (" << code_meaning(v->code) << "):";
    for (const auto& [kind, id] : v->entities) out << ' ' << kind << '=' << id;
    out << " slack=" << v->slack;
    if (!v->detail.empty()) out << " - " << v->detail;
    out << '\n';
  }
  return out.str();
}

}  // namespace upms
