#pragma once

// Exhaustive comparison of the linear model with the validator on tiny
// instances. Every combinatorial pattern in scope is encoded as binaries;
// the model side asks whether some continuous completion satisfies every
// row, the validator side asks whether the earliest-start timing of the
// decoded skeleton is clean.
//
// Scope: each job unplaced or in any (machine, rank, period) slot, in every
// order; any successor per run; any personnel (or none) per run; every
// route order; derived aux links, plus every single aux flip when the
// successors are the derived ones. Patterns using a variable the model does
// not declare, or that do not decode, are counted and skipped.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "difference_lp.hpp"
#include "upms/milp.hpp"
#include "upms/oracle.hpp"
#include "upms/validator.hpp"

namespace upms::testing {

struct EquivalenceStats {
  long long patterns = 0;
  long long skipped = 0;
  long long feasible[2] = {0, 0};
  long long mismatches = 0;
  std::vector<std::string> examples;
  /// Optima over the model-feasible patterns: most jobs placed in step 1,
  /// least production time in step 2 (absent when nothing is feasible).
  int best_accepted = 0;
  std::optional<double> best_total;
};

class EquivalenceChecker {
 public:
  explicit EquivalenceChecker(const Instance& in)
      : in_(in),
        models_{build_model(in, Mode::kStep1), build_model(in, Mode::kStep2)},
        lps_{DifferenceLp(models_[0]), DifferenceLp(models_[1])} {
    for (const Variable& v : models_[1].variables()) {
      if (v.name.rfind("AX_", 0) == 0) declared_aux_.push_back(ParseAux(v.name));
    }
  }

  EquivalenceStats run() {
    stats_ = {};
    std::vector<Slot> slots;
    for (int l = 1; l <= in_.machine_count(); ++l) {
      for (int t = 1; t <= in_.period_count(); ++t) {
        for (int r = 1; r <= in_.machine(l).positions_per_period; ++r) {
          slots.push_back({l, in_.position_id(l, r), t, {}});
        }
      }
    }
    PlaceJobs(1, slots);
    return stats_;
  }

 private:
  struct Slot {
    int machine, position, period;
    std::vector<int> jobs;
  };

  static AuxLink ParseAux(const std::string& name) {
    int h = 0, l = 0, v = 0;
    std::sscanf(name.c_str(), "AX_%d_%d_%d", &h, &l, &v);
    return {h, l, v};
  }

  void PlaceJobs(int job, std::vector<Slot>& slots) {
    if (job > in_.job_count()) {
      std::vector<PositionRun> runs;
      for (const Slot& s : slots) {
        if (!s.jobs.empty()) runs.push_back({s.machine, s.position, s.period, s.jobs});
      }
      std::sort(runs.begin(), runs.end(), [](const PositionRun& a, const PositionRun& b) {
        return std::tie(a.machine, a.period, a.position) <
               std::tie(b.machine, b.period, b.position);
      });
      Structure(runs);
      return;
    }
    PlaceJobs(job + 1, slots);
    for (Slot& s : slots) {
      for (std::size_t at = 0; at <= s.jobs.size(); ++at) {
        s.jobs.insert(s.jobs.begin() + at, job);
        PlaceJobs(job + 1, slots);
        s.jobs.erase(s.jobs.begin() + at);
      }
    }
  }

  void Structure(std::vector<PositionRun> runs) {
    const Connectivity derived = derive_connectivity(in_, runs);
    const std::size_t r = runs.size();
    std::function<void(std::size_t)> successor = [&](std::size_t x) {
      if (x == r) {
        bool is_derived = true;
        for (std::size_t y = 0; y < r; ++y) is_derived &= runs[y].successor == derived.successors[y];
        Staff(runs, 0, derived.aux_links, is_derived);
        return;
      }
      for (int h = 0; h <= in_.job_count(); ++h) {
        if (h == runs[x].jobs.back()) continue;
        runs[x].successor = h;
        successor(x + 1);
      }
    };
    successor(0);
  }

  void Staff(std::vector<PositionRun>& runs, std::size_t x, const std::vector<AuxLink>& aux,
             bool flip_aux) {
    if (x == runs.size()) {
      Routes(runs, aux, flip_aux);
      return;
    }
    for (int k = 0; k <= in_.personnel_count(); ++k) {
      runs[x].personnel = k;
      Staff(runs, x + 1, aux, flip_aux);
    }
  }

  void Routes(const std::vector<PositionRun>& runs, const std::vector<AuxLink>& aux,
              bool flip_aux) {
    std::map<std::pair<int, int>, std::vector<int>> visits;
    for (const PositionRun& run : runs) {
      if (run.personnel != 0) visits[{run.personnel, run.period}].push_back(run.position);
    }
    std::vector<PersonnelRoute> routes;
    for (auto& [key, positions] : visits) {
      std::sort(positions.begin(), positions.end());
      routes.push_back({key.first, key.second, positions});
    }
    std::function<void(std::size_t)> order = [&](std::size_t x) {
      if (x == routes.size()) {
        Evaluate(runs, routes, aux);
        if (!flip_aux) return;
        for (const AuxLink& a : declared_aux_) {
          std::vector<AuxLink> flipped = aux;
          auto it = std::find(flipped.begin(), flipped.end(), a);
          if (it == flipped.end()) {
            flipped.push_back(a);
          } else {
            flipped.erase(it);
          }
          Evaluate(runs, routes, flipped);
        }
        return;
      }
      auto& p = routes[x].positions;
      std::sort(p.begin(), p.end());
      do {
        order(x + 1);
      } while (std::next_permutation(p.begin(), p.end()));
    };
    order(0);
  }

  void Evaluate(const std::vector<PositionRun>& runs, const std::vector<PersonnelRoute>& routes,
                const std::vector<AuxLink>& aux) {
    ++stats_.patterns;
    Schedule pattern;
    std::set<int> accepted;
    for (const PositionRun& run : runs) {
      for (int j : run.jobs) {
        pattern.placements.push_back({j, run.machine, run.position, run.period, 0, 0});
        accepted.insert(j);
      }
    }
    pattern.runs = runs;
    pattern.personnel_routes = routes;
    pattern.aux_links = aux;
    pattern.accepted.assign(accepted.begin(), accepted.end());

    Assignment binaries;
    Schedule decoded;
    try {
      const Assignment all = encode_schedule(in_, pattern);
      for (const auto& [name, value] : all) {
        const auto idx = models_[1].find(name);
        if (!idx || models_[0].find(name) != idx) {
          ++stats_.skipped;
          return;
        }
        if (models_[1].variables()[*idx].kind == VarKind::kBinary) binaries[name] = value;
      }
      decoded = decode_assignment(in_, binaries);
    } catch (const ScheduleError&) {
      ++stats_.skipped;
      return;
    }

    Skeleton skeleton;
    std::vector<int> successors;
    for (const PositionRun& run : decoded.runs) {
      skeleton.runs.push_back({run.machine, run.position, run.period, run.jobs, run.personnel});
      successors.push_back(run.successor);
    }
    skeleton.routes = decoded.personnel_routes;
    skeleton.successors = successors;
    skeleton.aux_links = decoded.aux_links;
    const std::optional<Schedule> timed = earliest_start_assignment(in_, skeleton);

    std::vector<double> dense(models_[1].variables().size(), 0.0);
    for (const auto& [name, value] : binaries) dense[models_[1].at(name)] = value;

    for (int m = 0; m < 2; ++m) {
      const Mode mode = m == 0 ? Mode::kStep1 : Mode::kStep2;
      const bool clean = timed && validate_schedule(in_, *timed, mode).is_feasible();
      const auto lp = lps_[m].solve(dense);
      stats_.feasible[m] += clean;
      if (lp && m == 0) {
        stats_.best_accepted = std::max<int>(stats_.best_accepted, decoded.placements.size());
      }
      if (lp && m == 1) {
        const double total = models_[1].objective_value(binaries);
        if (!stats_.best_total || total < *stats_.best_total) stats_.best_total = total;
      }
      std::string problem;
      std::string back_text;
      if (lp) {
        Assignment full = binaries;
        const auto& vars = models_[m].variables();
        for (std::size_t v = 0; v < vars.size(); ++v) {
          if (vars[v].kind == VarKind::kContinuous && (*lp)[v] != 0) full[vars[v].name] = (*lp)[v];
        }
        const Schedule back = decode_assignment(in_, full);
        const ViolationReport report = validate_schedule(in_, back, mode);
        if (!report.is_feasible()) back_text = "model solution: " + explain(report);
      }
      if (lp.has_value() != clean) {
        problem = lp ? "model feasible, validator rejects" : "validator clean, model rejects";
        problem += "\n" + back_text;
      } else if (lp) {
        if (!back_text.empty()) problem = back_text;
        if (!check_assignment(models_[m], encode_schedule(in_, *timed)).ok()) {
          problem = "earliest-start schedule violates the model";
        }
      }
      if (!problem.empty()) {
        ++stats_.mismatches;
        if (stats_.examples.size() < 5) {
          stats_.examples.push_back(std::string(mode_name(mode)) + ": " + problem + "\n" +
                                    Describe(decoded) +
                                    (timed ? explain(validate_schedule(in_, *timed, mode))
                                           : std::string("no earliest-start timing\n")));
        }
      }
    }
  }

  static std::string Describe(const Schedule& s) {
    std::string out;
    for (const PositionRun& r : s.runs) {
      out += "  run m" + std::to_string(r.machine) + " p" + std::to_string(r.position) + " t" +
             std::to_string(r.period) + " [";
      for (int j : r.jobs) out += " " + std::to_string(j);
      out += " ] -> " + std::to_string(r.successor) + " k" + std::to_string(r.personnel) + "\n";
    }
    for (const PersonnelRoute& r : s.personnel_routes) {
      out += "  route k" + std::to_string(r.personnel) + " t" + std::to_string(r.period) + ":";
      for (int p : r.positions) out += " " + std::to_string(p);
      out += "\n";
    }
    for (const AuxLink& a : s.aux_links) {
      out += "  aux h" + std::to_string(a.job) + " m" + std::to_string(a.machine) + " v" +
             std::to_string(a.period) + "\n";
    }
    return out;
  }

  const Instance& in_;
  ModelIR models_[2];
  DifferenceLp lps_[2];
  std::vector<AuxLink> declared_aux_;
  EquivalenceStats stats_;
};

}  // namespace upms::testing
