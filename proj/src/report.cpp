#include "upms/report.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace upms {

namespace {

struct Box {
  Minutes start = 0;
  Minutes end = 0;
  int period = 0;
  bool setup = false;
  std::string label;
};

std::string Fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Short form for work days: 10, 7.5, 3.33.
std::string Days(double v) {
  std::string s = Fixed(v);
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s;
}

std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Rows {
  std::vector<std::string> names;
  std::vector<std::vector<Box>> boxes;
};

Rows Collect(const Instance& in, const Schedule& s) {
  std::map<int, const JobPlacement*> at;
  for (const JobPlacement& p : s.placements) at[p.job] = &p;
  const int m = in.machine_count();
  Rows rows;
  for (int l = 1; l <= m; ++l) rows.names.push_back("M" + std::to_string(l));
  for (int k = 1; k <= in.personnel_count(); ++k) rows.names.push_back("K" + std::to_string(k));
  rows.boxes.resize(rows.names.size());

  for (const PositionRun& r : s.runs) {
    if (r.jobs.empty() || r.machine < 1 || r.machine > m) continue;
    auto& row = rows.boxes[r.machine - 1];
    int prev = kDummyJob;
    for (int i : r.jobs) {
      auto it = at.find(i);
      if (it == at.end()) continue;
      const JobPlacement& p = *it->second;
      const Minutes setup = prev == kDummyJob ? in.initial_setup(i, r.machine)
                                              : in.setup(prev, i, r.machine);
      if (setup > 0) row.push_back({p.start - setup, p.start, r.period, true, ""});
      row.push_back({p.start, p.end, r.period, false, "J" + std::to_string(i)});
      prev = i;
    }
    auto last = at.find(r.jobs.back());
    if (last != at.end()) {
      const Minutes ch = in.changeover(r.jobs.back(), r.successor, r.machine);
      const Minutes end = last->second->end;
      if (ch > 0) row.push_back({end, end + ch, r.period, true, ""});
    }
    if (r.personnel >= 1 && r.personnel <= in.personnel_count()) {
      rows.boxes[m + r.personnel - 1].push_back(
          {r.personnel_start, r.personnel_end, r.period, false, "M" + std::to_string(r.machine)});
    }
  }
  for (auto& row : rows.boxes) {
    std::stable_sort(row.begin(), row.end(), [](const Box& a, const Box& b) {
      return std::tie(a.period, a.start, a.end) < std::tie(b.period, b.start, b.end);
    });
  }
  return rows;
}

std::vector<Minutes> PeriodOffsets(const Instance& in) {
  std::vector<Minutes> off(in.period_count() + 2, 0);
  for (int t = 1; t <= in.period_count(); ++t) off[t + 1] = off[t] + in.avb(t);
  return off;
}

}  // namespace

std::string gantt_svg(const Instance& in, const Schedule& s) {
  const Rows rows = Collect(in, s);
  const std::vector<Minutes> off = PeriodOffsets(in);
  const Minutes horizon = std::max<Minutes>(1, off[in.period_count() + 1]);
  const double left = 60, top = 40, row_h = 28, width = 1000;
  const double height = top + row_h * static_cast<double>(rows.names.size()) + 20;
  auto x = [&](int period, Minutes t) {
    return left + width * static_cast<double>(off[period] + t) / static_cast<double>(horizon);
  };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << Fixed(left + width + 20)
    << "\" height=\"" << Fixed(height) << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  o << "<defs><pattern id=\"hatch\" width=\"6\" height=\"6\" patternUnits=\"userSpaceOnUse\" "
       "patternTransform=\"rotate(45)\"><rect width=\"6\" height=\"6\" fill=\"#ffffff\"/>"
       "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" stroke=\"#888888\" stroke-width=\"2\"/>"
       "</pattern></defs>\n";
  for (int t = 1; t <= in.period_count(); ++t) {
    const double a = x(t, 0), b = x(t, in.avb(t));
    o << "<rect x=\"" << Fixed(a) << "\" y=\"" << Fixed(top - 20) << "\" width=\"" << Fixed(b - a)
      << "\" height=\"" << Fixed(height - top) << "\" fill=\"" << (t % 2 ? "#f4f4f4" : "#e8e8e8")
      << "\"/>\n";
    o << "<text x=\"" << Fixed(a + 4) << "\" y=\"" << Fixed(top - 6) << "\">Period " << t
      << "</text>\n";
  }
  const double axis_y = top + row_h * static_cast<double>(rows.names.size());
  o << "<line x1=\"" << Fixed(left) << "\" y1=\"" << Fixed(axis_y) << "\" x2=\""
    << Fixed(left + width) << "\" y2=\"" << Fixed(axis_y) << "\" stroke=\"#000000\"/>\n";
  for (std::size_t r = 0; r < rows.names.size(); ++r) {
    const double y = top + row_h * static_cast<double>(r);
    o << "<text x=\"4\" y=\"" << Fixed(y + row_h / 2 + 4) << "\">" << Escape(rows.names[r])
      << "</text>\n";
    for (const Box& b : rows.boxes[r]) {
      const double a = x(b.period, b.start), z = x(b.period, b.end);
      o << "<rect x=\"" << Fixed(a) << "\" y=\"" << Fixed(y + 4) << "\" width=\""
        << Fixed(std::max(0.0, z - a)) << "\" height=\"" << Fixed(row_h - 8) << "\" fill=\""
        << (b.setup ? "url(#hatch)" : "#6a9fd4") << "\" stroke=\"#333333\" stroke-width=\"0.5\">"
        << "<title>" << Escape(b.setup ? std::string("setup") : b.label) << " [" << b.start
        << ", " << b.end << "] period " << b.period << "</title></rect>\n";
      if (!b.setup && z - a > 24) {
        o << "<text x=\"" << Fixed(a + 2) << "\" y=\"" << Fixed(y + row_h / 2 + 4) << "\">"
          << Escape(b.label) << "</text>\n";
      }
    }
  }
  o << "</svg>\n";
  return o.str();
}

std::string gantt_text(const Instance& in, const Schedule& s) {
  const Rows rows = Collect(in, s);
  std::ostringstream o;
  o << "periods:";
  for (int t = 1; t <= in.period_count(); ++t) o << " " << t << "=[0," << in.avb(t) << "]";
  o << "\n";
  for (std::size_t r = 0; r < rows.names.size(); ++r) {
    o << rows.names[r] << ":";
    for (const Box& b : rows.boxes[r]) {
      o << " t" << b.period << " " << (b.setup ? std::string("setup") : b.label) << "["
        << b.start << "," << b.end << "]";
    }
    o << "\n";
  }
  return o.str();
}

std::vector<Scenario> scenarios_from_json(const Json& json) {
  if (!json.is_array()) throw FormatError("scenario file must hold a JSON array");
  std::vector<Scenario> out;
  for (const Json& item : json) {
    try {
      Scenario s;
      s.name = item.at("name").get<std::string>();
      s.end_times = item.at("end_times").get<std::vector<std::vector<Minutes>>>();
      if (item.contains("start_times")) {
        s.start_times = item.at("start_times").get<std::vector<std::vector<Minutes>>>();
      }
      out.push_back(std::move(s));
    } catch (const Json::exception& e) {
      throw FormatError("scenario " + std::to_string(out.size() + 1) + ": " + e.what());
    }
  }
  return out;
}

Instance apply_scenario(const Instance& instance, const Scenario& sc) {
  Instance in = instance;
  auto fits = [&](const std::vector<std::vector<Minutes>>& table) {
    if (table.size() != in.personnel.size()) return false;
    for (const auto& row : table) {
      if (static_cast<int>(row.size()) != in.period_count()) return false;
    }
    return true;
  };
  if (!fits(sc.end_times) || (!sc.start_times.empty() && !fits(sc.start_times))) {
    throw std::invalid_argument("scenario '" + sc.name +
                                "' needs one value per personnel and period");
  }
  for (std::size_t k = 0; k < in.personnel.size(); ++k) {
    for (int t = 1; t <= in.period_count(); ++t) {
      Window& w = in.personnel[k].windows[t - 1];
      w.end = sc.end_times[k][t - 1];
      if (!sc.start_times.empty()) w.start = sc.start_times[k][t - 1];
    }
  }
  const auto defects = validate_instance(in, Regime::kRelaxed);
  if (!defects.empty()) {
    throw std::invalid_argument("scenario '" + sc.name + "': " + defects.front());
  }
  return in;
}

std::vector<SweepRow> run_sweep(const Instance& instance, const std::vector<Scenario>& scenarios,
                                const SolveConfig& config, int parallel) {
  if (config.backend != Backend::kNative) {
    throw std::invalid_argument("sweeps need the native backend");
  }
  std::vector<Instance> cases = {instance};
  std::vector<std::string> names = {"base"};
  for (const Scenario& sc : scenarios) {
    cases.push_back(apply_scenario(instance, sc));
    names.push_back(sc.name);
  }

  std::vector<SweepRow> rows(cases.size());
  std::vector<std::exception_ptr> errors(cases.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t c; (c = next++) < cases.size();) {
      try {
        const Instance& in = cases[c];
        const SolveReport rep = tssa_solve(in, config);
        SweepRow& row = rows[c];
        row.name = names[c];
        for (int t = 1; t <= in.period_count(); ++t) {
          Minutes minutes = 0;
          for (int k = 1; k <= in.personnel_count(); ++k) minutes += in.window(k, t).length();
          row.weekly_work_days.push_back(static_cast<double>(minutes) / kWorkdayMinutes);
          row.total_work_days += row.weekly_work_days.back();
        }
        row.step1_seconds = rep.step1_seconds;
        row.step2_seconds = rep.step2_seconds;
        row.status = rep.status;
        row.infeasible = rep.status != SolveStatus::kAllScheduled;
        row.production = rep.objective.total;
        row.available = total_available_time(in);
        row.utilization = utilization_ratio(row.production, row.available);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    }
  };
  const int threads = std::clamp(parallel, 1, static_cast<int>(cases.size()));
  std::vector<std::thread> pool;
  for (int x = 1; x < threads; ++x) pool.emplace_back(work);
  work();
  for (std::thread& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (std::size_t c = 1; c < rows.size(); ++c) {
    if (!rows[0].infeasible && !rows[c].infeasible) {
      rows[c].increase = rows[c].production - rows[0].production;
    }
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream o;
  o << "scenario,weekly_work_days,total_work_days,step1_seconds,step2_seconds,"
       "total_production_time,total_available_time,production_time_increase,"
       "utilization_percent,infeasible\n";
  for (const SweepRow& r : rows) {
    std::string weekly = "[";
    for (std::size_t t = 0; t < r.weekly_work_days.size(); ++t) {
      weekly += (t ? " " : "") + Days(r.weekly_work_days[t]);
    }
    weekly += "]";
    o << r.name << "," << weekly << "," << Days(r.total_work_days) << ","
      << Fixed(r.step1_seconds) << "," << Fixed(r.step2_seconds) << ",";
    if (r.infeasible) {
      o << ",";
    } else {
      o << r.production << ",";
    }
    o << r.available << ",";
    if (r.increase) o << *r.increase;
    o << ",";
    if (!r.infeasible) o << percent_half_up(r.utilization);
    o << "," << (r.infeasible ? "yes" : "no") << "\n";
  }
  return o.str();
}

Json sweep_json(const std::vector<SweepRow>& rows) {
  Json out = Json::array();
  for (const SweepRow& r : rows) {
    Json j;
    j["scenario"] = r.name;
    j["weekly_work_days"] = r.weekly_work_days;
    j["total_work_days"] = r.total_work_days;
    j["step1_seconds"] = r.step1_seconds;
    j["step2_seconds"] = r.step2_seconds;
    j["status"] = std::string(status_name(r.status));
    j["infeasible"] = r.infeasible;
    j["total_production_time"] = r.production;
    j["total_available_time"] = r.available;
    j["production_time_increase"] = r.increase ? Json(*r.increase) : Json(nullptr);
    j["utilization"] = r.utilization;
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace upms
