#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "upms/milp.hpp"

namespace upms {

namespace {

template <typename... Ids>
std::string Name(std::string_view prefix, Ids... ids) {
  std::string s(prefix);
  ((s += '_', s += std::to_string(ids)), ...);
  return s;
}

[[noreturn]] void Refuse(const std::string& what) { throw ScheduleError(what); }

class Encoder {
 public:
  explicit Encoder(const Instance& in) : in_(in) {}

  void Binary(const std::string& name) {
    if (!out_.emplace(name, 1.0).second) Refuse("variable " + name + " set twice");
  }
  void Continuous(const std::string& name, Minutes value) {
    if (out_.count(name)) Refuse("variable " + name + " set twice");
    if (value != 0) out_[name] = static_cast<double>(value);
  }

  void CheckSlot(int l, int p, int t) const {
    if (l < 1 || l > in_.machine_count() || t < 1 || t > in_.period_count() ||
        p < 1 || p > in_.position_count() || in_.machine_of_position(p) != l) {
      Refuse("no slot (machine " + std::to_string(l) + ", position " +
             std::to_string(p) + ", period " + std::to_string(t) + ")");
    }
  }
  void CheckJob(int i) const {
    if (i < 1 || i > in_.job_count()) Refuse("unknown job " + std::to_string(i));
  }
  void CheckPersonnel(int k) const {
    if (k < 1 || k > in_.personnel_count()) {
      Refuse("unknown personnel " + std::to_string(k));
    }
  }

  Assignment Encode(const Schedule& s) {
    for (const JobPlacement& pl : s.placements) {
      CheckJob(pl.job);
      CheckSlot(pl.machine, pl.position, pl.period);
      Binary(Name("AJ", pl.job, pl.machine, pl.position, pl.period));
      Continuous(Name("STJ", pl.job, pl.machine, pl.position, pl.period), pl.start);
      Continuous(Name("ENJ", pl.job, pl.machine, pl.position, pl.period), pl.end);
    }
    for (const PositionRun& r : s.runs) {
      CheckSlot(r.machine, r.position, r.period);
      if (!r.jobs.empty()) {
        for (int i : r.jobs) CheckJob(i);
        Binary(Name("BJ", r.jobs.front(), r.machine, r.position, r.period));
        for (std::size_t x = 0; x + 1 < r.jobs.size(); ++x) {
          if (r.jobs[x] == r.jobs[x + 1]) Refuse("job repeated inside a run");
          Binary(Name("SJ", r.jobs[x], r.jobs[x + 1], r.machine, r.position, r.period));
        }
        if (r.successor != kDummyJob) CheckJob(r.successor);
        if (r.successor == r.jobs.back()) Refuse("run names its own last job as successor");
        Binary(Name("EJend", r.jobs.back(), r.successor, r.machine, r.position,
                    r.period));
      }
      if (r.personnel != 0) {
        CheckPersonnel(r.personnel);
        Binary(Name("AP", r.personnel, r.position, r.period));
        Continuous(Name("STP", r.personnel, r.position, r.period), r.personnel_start);
        Continuous(Name("ENP", r.personnel, r.position, r.period), r.personnel_end);
      } else if (r.jobs.empty()) {
        Refuse("run with neither jobs nor personnel");
      }
    }
    for (const PersonnelRoute& route : s.personnel_routes) {
      CheckPersonnel(route.personnel);
      if (route.period < 1 || route.period > in_.period_count()) {
        Refuse("route in unknown period");
      }
      if (route.positions.empty()) Refuse("empty personnel route");
      for (int p : route.positions) {
        if (p < 1 || p > in_.position_count()) Refuse("route names unknown position");
      }
      const int k = route.personnel, t = route.period;
      Binary(Name("BP", k, route.positions.front(), t));
      for (std::size_t x = 0; x + 1 < route.positions.size(); ++x) {
        if (route.positions[x] == route.positions[x + 1]) {
          Refuse("position repeated inside a route");
        }
        Binary(Name("SP", k, route.positions[x], route.positions[x + 1], t));
      }
      Binary(Name("EP", k, route.positions.back(), t));
    }
    for (const AuxLink& a : s.aux_links) {
      if (in_.period_count() < 2 || a.period < 0 || a.period >= in_.period_count() ||
          a.machine < 1 || a.machine > in_.machine_count() ||
          (a.job == kDummyJob && a.period == 0)) {
        Refuse("aux link outside the model's index set");
      }
      if (a.job != kDummyJob) CheckJob(a.job);
      Binary(Name("AX", a.job, a.machine, a.period));
    }
    return std::move(out_);
  }

 private:
  const Instance& in_;
  Assignment out_;
};

using SlotKey = std::tuple<int, int, int>;  // machine, position, period

struct Decoded {
  std::set<std::tuple<int, int, int, int>> aj;
  std::map<std::tuple<int, int, int, int>, Minutes> stj, enj;
  std::map<SlotKey, std::vector<std::pair<int, int>>> sj;
  std::map<SlotKey, std::vector<int>> bj;
  std::map<SlotKey, std::vector<std::pair<int, int>>> ej;
  std::vector<AuxLink> ax;
  std::map<std::pair<int, int>, std::vector<int>> ap;  // (p, t) -> k
  std::map<std::tuple<int, int, int>, Minutes> stp, enp;  // (k, p, t)
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> sp;  // (k, t)
  std::map<std::pair<int, int>, std::vector<int>> bp, ep;
};

std::vector<int> SplitIds(const std::string& name, std::string& prefix) {
  std::vector<int> ids;
  std::stringstream ss(name);
  std::string part;
  std::getline(ss, prefix, '_');
  while (std::getline(ss, part, '_')) {
    try {
      std::size_t used = 0;
      ids.push_back(std::stoi(part, &used));
      if (used != part.size()) Refuse("malformed variable name " + name);
    } catch (const std::logic_error&) {
      Refuse("malformed variable name " + name);
    }
  }
  return ids;
}

}  // namespace

Assignment encode_schedule(const Instance& instance, const Schedule& schedule) {
  return Encoder(instance).Encode(schedule);
}

Schedule decode_assignment(const Instance& in, const Assignment& assignment) {
  static const std::map<std::string, std::size_t> kArity = {
      {"AJ", 4}, {"SJ", 5}, {"BJ", 4}, {"EJend", 5}, {"STJ", 4}, {"ENJ", 4},
      {"AX", 3}, {"AP", 3}, {"SP", 4}, {"BP", 3}, {"EP", 3}, {"STP", 3},
      {"ENP", 3}};
  Decoded d;
  const int n = in.job_count();
  auto slot_ok = [&](int l, int p, int t) {
    return l >= 1 && l <= in.machine_count() && t >= 1 && t <= in.period_count() &&
           p >= 1 && p <= in.position_count() && in.machine_of_position(p) == l;
  };
  for (const auto& [name, value] : assignment) {
    std::string prefix;
    const std::vector<int> id = SplitIds(name, prefix);
    auto arity = kArity.find(prefix);
    if (arity == kArity.end() || arity->second != id.size()) {
      Refuse("unknown variable " + name);
    }
    const bool continuous = prefix == "STJ" || prefix == "ENJ" ||
                            prefix == "STP" || prefix == "ENP";
    if (continuous) {
      const Minutes minutes = std::llround(value);
      if (minutes == 0) continue;
      if (prefix == "STJ" || prefix == "ENJ") {
        auto& target = prefix == "STJ" ? d.stj : d.enj;
        target[{id[0], id[1], id[2], id[3]}] = minutes;
      } else {
        auto& target = prefix == "STP" ? d.stp : d.enp;
        target[{id[0], id[1], id[2]}] = minutes;
      }
      continue;
    }
    if (std::fabs(value - std::round(value)) > 1e-6) {
      Refuse("non-integral binary " + name);
    }
    const long long bit = std::llround(value);
    if (bit == 0) continue;
    if (bit != 1) Refuse("binary " + name + " outside {0, 1}");
    if (prefix == "AJ") {
      d.aj.insert({id[0], id[1], id[2], id[3]});
    } else if (prefix == "SJ") {
      d.sj[{id[2], id[3], id[4]}].push_back({id[0], id[1]});
    } else if (prefix == "BJ") {
      d.bj[{id[1], id[2], id[3]}].push_back(id[0]);
    } else if (prefix == "EJend") {
      d.ej[{id[2], id[3], id[4]}].push_back({id[0], id[1]});
    } else if (prefix == "AX") {
      d.ax.push_back({id[0], id[1], id[2]});
    } else if (prefix == "AP") {
      d.ap[{id[1], id[2]}].push_back(id[0]);
    } else if (prefix == "SP") {
      d.sp[{id[0], id[3]}].push_back({id[1], id[2]});
    } else if (prefix == "BP") {
      d.bp[{id[0], id[2]}].push_back(id[1]);
    } else {
      d.ep[{id[0], id[2]}].push_back(id[1]);
    }
  }

  Schedule s;
  for (const auto& key : d.aj) {
    const auto [i, l, p, t] = key;
    if (i < 1 || i > n || !slot_ok(l, p, t)) Refuse("allocation outside the index set");
    const Minutes start = d.stj.count(key) ? d.stj.at(key) : 0;
    const Minutes end = d.enj.count(key) ? d.enj.at(key) : 0;
    s.placements.push_back({i, l, p, t, start, end});
  }
  for (const auto& times : {&d.stj, &d.enj}) {
    for (const auto& [key, value] : *times) {
      if (!d.aj.count(key)) Refuse("job time without allocation");
    }
  }

  std::set<SlotKey> slots;
  for (const auto& [key, v] : d.bj) slots.insert(key);
  for (const auto& [key, v] : d.sj) slots.insert(key);
  for (const auto& [key, v] : d.ej) slots.insert(key);
  for (const auto& [key, v] : d.ap) {
    const int p = key.first;
    if (p < 1 || p > in.position_count()) Refuse("personnel on unknown position");
    slots.insert({in.machine_of_position(p), p, key.second});
  }
  std::set<std::tuple<int, int, int>> staffed;  // (k, p, t)
  for (const SlotKey& key : slots) {
    const auto [l, p, t] = key;
    if (!slot_ok(l, p, t)) Refuse("sequence outside the index set");
    PositionRun run;
    run.machine = l;
    run.position = p;
    run.period = t;
    const auto begs = d.bj.count(key) ? d.bj.at(key) : std::vector<int>{};
    auto seqs = d.sj.count(key) ? d.sj.at(key) : std::vector<std::pair<int, int>>{};
    auto ends = d.ej.count(key) ? d.ej.at(key) : std::vector<std::pair<int, int>>{};
    if (begs.size() > 1) Refuse("several first jobs in one position");
    if (begs.size() == 1) {
      int cur = begs.front();
      run.jobs.push_back(cur);
      while (true) {
        auto it = std::find_if(seqs.begin(), seqs.end(),
                               [cur](const auto& e) { return e.first == cur; });
        if (it == seqs.end()) break;
        const int next = it->second;
        seqs.erase(it);
        if (std::find_if(seqs.begin(), seqs.end(), [cur](const auto& e) {
              return e.first == cur;
            }) != seqs.end()) {
          Refuse("job with several successors");
        }
        if (std::find(run.jobs.begin(), run.jobs.end(), next) != run.jobs.end()) {
          Refuse("cyclic job sequence");
        }
        run.jobs.push_back(next);
        cur = next;
      }
      if (ends.size() != 1 || ends.front().first != cur) {
        Refuse("sequence end does not match its last job");
      }
      run.successor = ends.front().second;
      ends.clear();
    }
    if (!seqs.empty() || !ends.empty()) Refuse("sequence not reachable from a first job");
    const auto staff = d.ap.count({p, t}) ? d.ap.at({p, t}) : std::vector<int>{};
    if (staff.size() > 1) Refuse("several personnel on one position");
    if (staff.size() == 1) {
      const int k = staff.front();
      if (k < 1 || k > in.personnel_count()) Refuse("unknown personnel");
      run.personnel = k;
      const std::tuple<int, int, int> kpt{k, p, t};
      run.personnel_start = d.stp.count(kpt) ? d.stp.at(kpt) : 0;
      run.personnel_end = d.enp.count(kpt) ? d.enp.at(kpt) : 0;
      staffed.insert(kpt);
    }
    s.runs.push_back(run);
  }
  for (const auto& times : {&d.stp, &d.enp}) {
    for (const auto& [key, value] : *times) {
      if (!staffed.count(key)) Refuse("personnel time without allocation");
    }
  }

  std::set<std::pair<int, int>> routes;
  for (const auto& [key, v] : d.bp) routes.insert(key);
  for (const auto& [key, v] : d.sp) routes.insert(key);
  for (const auto& [key, v] : d.ep) routes.insert(key);
  for (const auto& key : routes) {
    const auto [k, t] = key;
    if (k < 1 || k > in.personnel_count() || t < 1 || t > in.period_count()) {
      Refuse("route outside the index set");
    }
    const auto begs = d.bp.count(key) ? d.bp.at(key) : std::vector<int>{};
    auto seqs = d.sp.count(key) ? d.sp.at(key) : std::vector<std::pair<int, int>>{};
    const auto ends = d.ep.count(key) ? d.ep.at(key) : std::vector<int>{};
    if (begs.size() != 1) Refuse("route without a unique first position");
    PersonnelRoute route{k, t, {begs.front()}};
    int cur = begs.front();
    while (true) {
      auto it = std::find_if(seqs.begin(), seqs.end(),
                             [cur](const auto& e) { return e.first == cur; });
      if (it == seqs.end()) break;
      const int next = it->second;
      seqs.erase(it);
      if (std::find(route.positions.begin(), route.positions.end(), next) !=
          route.positions.end()) {
        Refuse("cyclic personnel route");
      }
      route.positions.push_back(next);
      cur = next;
    }
    if (!seqs.empty()) Refuse("route sequence not reachable from its start");
    if (ends.size() != 1 || ends.front() != cur) Refuse("route end does not match");
    s.personnel_routes.push_back(route);
  }

  s.aux_links = d.ax;
  for (const AuxLink& a : s.aux_links) {
    if (a.job < 0 || a.job > n || a.machine < 1 || a.machine > in.machine_count()) {
      Refuse("aux link outside the index set");
    }
  }
  std::set<int> accepted;
  for (const JobPlacement& pl : s.placements) accepted.insert(pl.job);
  s.accepted.assign(accepted.begin(), accepted.end());
  normalize(s);
  return s;
}

}  // namespace upms
