#include "upms/json_io.hpp"

#include <fstream>
#include <sstream>

namespace upms {

namespace {

template <typename T>
T Field(const Json& json, const char* key) {
  if (!json.is_object() || !json.contains(key)) {
    throw FormatError(std::string("missing field '") + key + "'");
  }
  try {
    return json.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("field '") + key + "': " + e.what());
  }
}

template <typename T>
T FieldOr(const Json& json, const char* key, T fallback) {
  if (!json.contains(key) || json.at(key).is_null()) return fallback;
  return Field<T>(json, key);
}

const Json& ArrayField(const Json& json, const char* key) {
  if (!json.is_object() || !json.contains(key) || !json.at(key).is_array()) {
    throw FormatError(std::string("field '") + key + "' must be an array");
  }
  return json.at(key);
}

}  // namespace

Json instance_to_json(const Instance& instance) {
  Json out;
  out["periods"] = Json::array();
  for (const Period& p : instance.periods) {
    out["periods"].push_back(
        {{"index", p.index}, {"available_time", p.available_time}});
  }
  out["machines"] = Json::array();
  for (const Machine& m : instance.machines) {
    Json machine = {{"id", m.id},
                    {"positions_per_period", m.positions_per_period}};
    if (m.final_cleaning) machine["final_cleaning"] = *m.final_cleaning;
    out["machines"].push_back(machine);
  }
  out["jobs"] = Json::array();
  for (const Job& j : instance.jobs) {
    Json processing = Json::array();
    for (const auto& [machine, minutes] : j.processing) {
      processing.push_back({{"machine", machine}, {"minutes", minutes}});
    }
    out["jobs"].push_back({{"id", j.id},
                           {"processing", processing},
                           {"release_period", j.release_period},
                           {"release_time", j.release_time},
                           {"delivery_period", j.delivery_period},
                           {"delivery_time", j.delivery_time}});
  }
  const SetupMatrix& s = instance.setups;
  Json between = Json::array();
  Json initial = Json::array();
  Json terminal = Json::array();
  for (int l = 1; l <= s.machines(); ++l) {
    Json matrix = Json::array();
    Json init = Json::array();
    Json term = Json::array();
    bool any_terminal = false;
    for (int i = 1; i <= s.jobs(); ++i) {
      Json row = Json::array();
      for (int j = 1; j <= s.jobs(); ++j) {
        row.push_back(i == j ? 0 : s.between(i, j, l));
      }
      matrix.push_back(row);
      init.push_back(s.initial(i, l));
      if (auto t = s.terminal(i, l)) {
        term.push_back(*t);
        any_terminal = true;
      } else {
        term.push_back(nullptr);
      }
    }
    between.push_back({{"machine", l}, {"minutes", matrix}});
    initial.push_back({{"machine", l}, {"minutes", init}});
    if (any_terminal) terminal.push_back({{"machine", l}, {"minutes", term}});
  }
  out["setups"] = {{"between", between}, {"initial", initial}};
  if (!terminal.empty()) out["setups"]["terminal"] = terminal;
  out["personnel"] = Json::array();
  for (const Personnel& k : instance.personnel) {
    Json windows = Json::array();
    for (std::size_t t = 0; t < k.windows.size(); ++t) {
      windows.push_back({{"period", static_cast<int>(t) + 1},
                         {"start", k.windows[t].start},
                         {"end", k.windows[t].end}});
    }
    out["personnel"].push_back({{"id", k.id}, {"windows", windows}});
  }
  return out;
}

Instance instance_from_json(const Json& json) {
  if (!json.is_object()) throw FormatError("instance must be a JSON object");
  Instance instance;
  for (const Json& p : ArrayField(json, "periods")) {
    instance.periods.push_back(
        {Field<int>(p, "index"), Field<Minutes>(p, "available_time")});
  }
  for (const Json& m : ArrayField(json, "machines")) {
    Machine machine;
    machine.id = Field<int>(m, "id");
    machine.positions_per_period = FieldOr<int>(m, "positions_per_period", 2);
    if (m.contains("final_cleaning") && !m.at("final_cleaning").is_null()) {
      machine.final_cleaning = Field<Minutes>(m, "final_cleaning");
    }
    instance.machines.push_back(machine);
  }
  const int last_period = static_cast<int>(instance.periods.size());
  for (const Json& j : ArrayField(json, "jobs")) {
    Job job;
    job.id = Field<int>(j, "id");
    for (const Json& entry : ArrayField(j, "processing")) {
      job.processing[Field<int>(entry, "machine")] =
          Field<Minutes>(entry, "minutes");
    }
    job.release_period = FieldOr<int>(j, "release_period", 1);
    job.release_time = FieldOr<Minutes>(j, "release_time", 0);
    job.delivery_period = FieldOr<int>(j, "delivery_period", last_period);
    Minutes last_avb = 0;
    if (job.delivery_period >= 1 && job.delivery_period <= last_period) {
      last_avb = instance.periods[job.delivery_period - 1].available_time;
    }
    job.delivery_time = FieldOr<Minutes>(j, "delivery_time", last_avb);
    instance.jobs.push_back(job);
  }
  const int n = static_cast<int>(instance.jobs.size());
  const int m = static_cast<int>(instance.machines.size());
  instance.setups = SetupMatrix(n, m);
  const Json& setups = json.contains("setups") ? json.at("setups") : Json();
  auto machine_of = [m](const Json& entry) {
    int l = Field<int>(entry, "machine");
    if (l < 1 || l > m) {
      throw FormatError("setup entry names unknown machine " +
                        std::to_string(l));
    }
    return l;
  };
  auto row_of = [n](const Json& entry) -> const Json& {
    const Json& minutes = ArrayField(entry, "minutes");
    if (static_cast<int>(minutes.size()) != n) {
      throw FormatError("setup row count must equal the number of jobs");
    }
    return minutes;
  };
  if (setups.is_object()) {
    if (setups.contains("between")) {
      for (const Json& entry : ArrayField(setups, "between")) {
        const int l = machine_of(entry);
        const Json& matrix = row_of(entry);
        for (int i = 1; i <= n; ++i) {
          const Json& row = matrix[i - 1];
          if (!row.is_array() || static_cast<int>(row.size()) != n) {
            throw FormatError("setup matrix must be square");
          }
          for (int j = 1; j <= n; ++j) {
            if (i != j) {
              instance.setups.set_between(i, j, l, row[j - 1].get<Minutes>());
            }
          }
        }
      }
    }
    if (setups.contains("initial")) {
      for (const Json& entry : ArrayField(setups, "initial")) {
        const int l = machine_of(entry);
        const Json& values = row_of(entry);
        for (int i = 1; i <= n; ++i) {
          instance.setups.set_initial(i, l, values[i - 1].get<Minutes>());
        }
      }
    }
    if (setups.contains("terminal")) {
      for (const Json& entry : ArrayField(setups, "terminal")) {
        const int l = machine_of(entry);
        const Json& values = row_of(entry);
        for (int i = 1; i <= n; ++i) {
          if (!values[i - 1].is_null()) {
            instance.setups.set_terminal(i, l, values[i - 1].get<Minutes>());
          }
        }
      }
    }
  }
  for (const Json& k : ArrayField(json, "personnel")) {
    Personnel person;
    person.id = Field<int>(k, "id");
    person.windows.assign(instance.periods.size(), Window{});
    for (const Json& w : ArrayField(k, "windows")) {
      const int t = Field<int>(w, "period");
      if (t < 1 || t > last_period) {
        throw FormatError("window names unknown period " + std::to_string(t));
      }
      person.windows[t - 1] = {Field<Minutes>(w, "start"),
                               Field<Minutes>(w, "end")};
    }
    instance.personnel.push_back(person);
  }
  return instance;
}

Json schedule_to_json(const Schedule& schedule) {
  Json out;
  out["placements"] = Json::array();
  for (const JobPlacement& p : schedule.placements) {
    out["placements"].push_back({{"job", p.job},
                                 {"machine", p.machine},
                                 {"position", p.position},
                                 {"period", p.period},
                                 {"start", p.start},
                                 {"end", p.end}});
  }
  out["runs"] = Json::array();
  for (const PositionRun& r : schedule.runs) {
    out["runs"].push_back({{"machine", r.machine},
                           {"position", r.position},
                           {"period", r.period},
                           {"jobs", r.jobs},
                           {"successor", r.successor},
                           {"personnel", r.personnel},
                           {"personnel_start", r.personnel_start},
                           {"personnel_end", r.personnel_end}});
  }
  out["personnel_routes"] = Json::array();
  for (const PersonnelRoute& route : schedule.personnel_routes) {
    out["personnel_routes"].push_back({{"personnel", route.personnel},
                                       {"period", route.period},
                                       {"positions", route.positions}});
  }
  out["accepted"] = schedule.accepted;
  out["aux_links"] = Json::array();
  for (const AuxLink& a : schedule.aux_links) {
    out["aux_links"].push_back(
        {{"job", a.job}, {"machine", a.machine}, {"period", a.period}});
  }
  return out;
}

Schedule schedule_from_json(const Json& json) {
  if (!json.is_object()) throw FormatError("schedule must be a JSON object");
  Schedule schedule;
  for (const Json& p : ArrayField(json, "placements")) {
    schedule.placements.push_back(
        {Field<int>(p, "job"), Field<int>(p, "machine"),
         Field<int>(p, "position"), Field<int>(p, "period"),
         Field<Minutes>(p, "start"), Field<Minutes>(p, "end")});
  }
  for (const Json& r : ArrayField(json, "runs")) {
    PositionRun run;
    run.machine = Field<int>(r, "machine");
    run.position = Field<int>(r, "position");
    run.period = Field<int>(r, "period");
    run.jobs = Field<std::vector<int>>(r, "jobs");
    run.successor = FieldOr<int>(r, "successor", kDummyJob);
    run.personnel = FieldOr<int>(r, "personnel", 0);
    run.personnel_start = FieldOr<Minutes>(r, "personnel_start", 0);
    run.personnel_end = FieldOr<Minutes>(r, "personnel_end", 0);
    schedule.runs.push_back(run);
  }
  if (json.contains("personnel_routes")) {
    for (const Json& route : ArrayField(json, "personnel_routes")) {
      schedule.personnel_routes.push_back(
          {Field<int>(route, "personnel"), Field<int>(route, "period"),
           Field<std::vector<int>>(route, "positions")});
    }
  }
  schedule.accepted = FieldOr<std::vector<int>>(json, "accepted", {});
  if (json.contains("aux_links")) {
    for (const Json& a : ArrayField(json, "aux_links")) {
      schedule.aux_links.push_back({Field<int>(a, "job"),
                                    Field<int>(a, "machine"),
                                    Field<int>(a, "period")});
    }
  }
  return schedule;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& text) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << text;
}

Json read_json_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& json) {
  write_text_file(path, json.dump(2) + "\n");
}

Json violation_report_to_json(const ViolationReport& report) {
  Json out;
  out["feasible"] = report.is_feasible();
  out["violations"] = Json::array();
  for (const Violation& v : report.violations) {
    Json entities = Json::object();
    for (const auto& [kind, id] : v.entities) entities[kind] = id;
    out["violations"].push_back({{"code", std::string(code_name(v.code))},
                                 {"entities", entities},
                                 {"slack", v.slack},
                                 {"detail", v.detail}});
  }
  return out;
}

}  // namespace upms
