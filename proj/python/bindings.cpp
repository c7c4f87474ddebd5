// Python extension. Instances, schedules and reports cross the boundary as
// JSON text; the upms package converts them to and from dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "upms/instancegen.hpp"
#include "upms/json_io.hpp"
#include "upms/lp_format.hpp"
#include "upms/milp.hpp"
#include "upms/oracle.hpp"
#include "upms/report.hpp"
#include "upms/tssa.hpp"
#include "upms/validator.hpp"

namespace py = pybind11;
using namespace upms;

namespace {

Instance ParseInstance(const std::string& text) {
  Instance in = instance_from_json(Json::parse(text));
  require_valid_instance(in);
  return in;
}

Schedule ParseSchedule(const std::string& text) { return schedule_from_json(Json::parse(text)); }

GenParams Params(int jobs, int machines, int periods, int personnel, bool time_windows,
                 bool eligibility, std::uint64_t seed, int positions) {
  GenParams p;
  p.jobs = jobs;
  p.machines = machines;
  p.periods = periods;
  p.personnel = personnel;
  p.time_windows = time_windows;
  p.eligibility = eligibility;
  p.seed = seed;
  p.positions = positions;
  return p;
}

SolveConfig Config(const std::string& backend, double step1_limit, double step2_limit, double gap,
                   std::int64_t budget, const std::string& export_dir,
                   const std::string& step1_solution, const std::string& step2_solution) {
  SolveConfig c;
  if (backend == "native") {
    c.backend = Backend::kNative;
  } else if (backend == "export") {
    c.backend = Backend::kExport;
  } else {
    throw std::invalid_argument("unknown backend '" + backend + "'");
  }
  c.step1_time_limit = step1_limit;
  c.step2_time_limit = step2_limit;
  c.step2_gap_target = gap;
  c.search_budget = budget;
  c.export_dir = export_dir;
  if (!step1_solution.empty()) c.step1_solution = step1_solution;
  if (!step2_solution.empty()) c.step2_solution = step2_solution;
  const auto defects = validate_config(c);
  if (!defects.empty()) throw std::invalid_argument(defects.front());
  return c;
}

}  // namespace

PYBIND11_MODULE(_upms, m) {
  m.doc() = "Parallel machine scheduling with limited personnel";

  py::register_exception<ScheduleError>(m, "ScheduleError");
  py::register_exception<FormatError>(m, "FormatError");
  py::register_exception<LpParseError>(m, "LpParseError");

  m.def("validate_params",
        [](int jobs, int machines, int periods, int personnel, bool tw, bool el,
           std::uint64_t seed, int positions) {
          return validate_params(Params(jobs, machines, periods, personnel, tw, el, seed, positions));
        });
  m.def("generate_instance",
        [](int jobs, int machines, int periods, int personnel, bool tw, bool el,
           std::uint64_t seed, int positions) {
          const GenParams p = Params(jobs, machines, periods, personnel, tw, el, seed, positions);
          return instance_to_json(generate_instance(p)).dump();
        });
  m.def("instance_file_name",
        [](int jobs, int machines, int periods, int personnel, bool tw, bool el,
           std::uint64_t seed, int positions) {
          return instance_file_name(Params(jobs, machines, periods, personnel, tw, el, seed, positions));
        });

  m.def("solve",
        [](const std::string& instance, const std::string& backend, double step1_limit,
           double step2_limit, double gap, std::int64_t budget, const std::string& export_dir,
           const std::string& step1_solution, const std::string& step2_solution) {
          const Instance in = ParseInstance(instance);
          const SolveConfig c = Config(backend, step1_limit, step2_limit, gap, budget, export_dir,
                                       step1_solution, step2_solution);
          SolveReport r;
          {
            py::gil_scoped_release release;
            r = tssa_solve(in, c);
          }
          Json j = solve_report_to_json(r);
          j["step1_schedule"] = schedule_to_json(r.step1_schedule);
          return j.dump();
        });
  m.def("exact_solve", [](const std::string& instance, const std::string& mode) {
    const Instance in = ParseInstance(instance);
    SolveReport r;
    {
      py::gil_scoped_release release;
      r = exact_solve(in, mode_from_name(mode));
    }
    return solve_report_to_json(r).dump();
  });

  m.def("validate", [](const std::string& instance, const std::string& schedule,
                       const std::string& mode) {
    const ViolationReport v =
        validate_schedule(ParseInstance(instance), ParseSchedule(schedule), mode_from_name(mode));
    return violation_report_to_json(v).dump();
  });
  m.def("production_time", [](const std::string& instance, const std::string& schedule) {
    const ProductionTime p = total_production_time(ParseInstance(instance), ParseSchedule(schedule));
    return std::vector<Minutes>{p.total, p.processing, p.setup};
  });

  m.def("export_lp", [](const std::string& instance, const std::string& mode) {
    return export_lp(build_model(ParseInstance(instance), mode_from_name(mode)));
  });
  m.def("encode_schedule", [](const std::string& instance, const std::string& schedule) {
    return encode_schedule(ParseInstance(instance), ParseSchedule(schedule));
  });
  m.def("decode_solution", [](const std::string& instance, const std::string& mode,
                              const std::string& text) {
    const Instance in = ParseInstance(instance);
    const ModelIR model = build_model(in, mode_from_name(mode));
    return schedule_to_json(decode_assignment(in, import_solution(text, model).values)).dump();
  });
  m.def("check_assignment", [](const std::string& instance, const std::string& mode,
                               const Assignment& values) {
    const ModelCheck c =
        check_assignment(build_model(ParseInstance(instance), mode_from_name(mode)), values);
    return c.violated_constraints;
  });

  m.def("gantt", [](const std::string& instance, const std::string& schedule,
                    const std::string& format) {
    const Instance in = ParseInstance(instance);
    const Schedule s = ParseSchedule(schedule);
    if (format == "svg") return gantt_svg(in, s);
    if (format == "text") return gantt_text(in, s);
    throw std::invalid_argument("unknown format '" + format + "'");
  });

  m.def("sweep", [](const std::string& instance, const std::string& scenarios,
                    double step1_limit, double step2_limit, double gap, std::int64_t budget,
                    int parallel) {
    const Instance in = ParseInstance(instance);
    const auto sc = scenarios_from_json(Json::parse(scenarios));
    const SolveConfig c = Config("native", step1_limit, step2_limit, gap, budget, ".", "", "");
    std::vector<SweepRow> rows;
    {
      py::gil_scoped_release release;
      rows = run_sweep(in, sc, c, parallel);
    }
    return std::make_pair(sweep_json(rows).dump(), sweep_csv(rows));
  });
}
