// upms: generate, solve, validate, export, render and sweep scheduling
// instances. Exit codes: 0 success or feasible, 1 infeasible or violations,
// 2 usage or I/O error.

#include <atomic>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "upms/instancegen.hpp"
#include "upms/json_io.hpp"
#include "upms/lp_format.hpp"
#include "upms/milp.hpp"
#include "upms/report.hpp"
#include "upms/tssa.hpp"
#include "upms/validator.hpp"

namespace fs = std::filesystem;
using namespace upms;

namespace {

constexpr int kOk = 0;
constexpr int kInfeasible = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void Emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    write_text_file(out, text);
  }
}

Instance LoadInstance(const std::string& path) {
  Instance in = instance_from_json(read_json_file(path));
  const auto defects = validate_instance(in, Regime::kRelaxed);
  if (!defects.empty()) {
    std::string msg = path + " is not a valid instance:";
    for (const auto& d : defects) msg += "\n  " + d;
    throw UsageError(msg);
  }
  return in;
}

Mode ParseMode(const std::string& name) {
  try {
    return mode_from_name(name);
  } catch (const std::exception&) {
    throw UsageError("unknown mode '" + name + "' (use step1 or step2)");
  }
}

struct GenerateArgs {
  GenParams params;
  bool batch = false;
  std::string out;
  int parallel = 1;
};

int Generate(const GenerateArgs& a) {
  if (!a.batch) {
    const auto defects = validate_params(a.params);
    if (!defects.empty()) {
      for (const auto& d : defects) std::cerr << "invalid parameters: " << d << "\n";
      return kUsage;
    }
    const Json j = instance_to_json(generate_instance(a.params));
    Emit(j.dump(2) + "\n", a.out);
    return kOk;
  }
  const fs::path dir = a.out.empty() ? fs::path(".") : fs::path(a.out);
  fs::create_directories(dir);
  GenParams base = a.params;
  std::vector<GenParams> grid = benchmark_grid(base.seed);
  for (GenParams& p : grid) p.positions = base.positions;
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(grid.size());
  auto work = [&] {
    for (std::size_t x; (x = next++) < grid.size();) {
      try {
        write_json_file(dir / instance_file_name(grid[x]), instance_to_json(generate_instance(grid[x])));
      } catch (...) {
        errors[x] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < std::max(1, a.parallel); ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::cout << "wrote " << grid.size() << " instances to " << dir.string() << "\n";
  return kOk;
}

struct SolveArgs {
  std::string instance;
  std::string backend = "native";
  SolveConfig config;
  std::string solution;
  std::string step2_solution;
  std::string out;
  std::string report;
  std::string export_dir = ".";
};

SolveConfig ConfigFrom(const SolveArgs& a) {
  SolveConfig c = a.config;
  if (a.backend == "native") {
    c.backend = Backend::kNative;
  } else if (a.backend == "export") {
    c.backend = Backend::kExport;
  } else {
    throw UsageError("unknown backend '" + a.backend + "' (use native or export)");
  }
  c.export_dir = a.export_dir;
  if (!a.solution.empty()) c.step1_solution = a.solution;
  if (!a.step2_solution.empty()) c.step2_solution = a.step2_solution;
  const auto defects = validate_config(c);
  if (!defects.empty()) throw UsageError(defects.front());
  return c;
}

int Solve(const SolveArgs& a) {
  const Instance in = LoadInstance(a.instance);
  const SolveReport r = tssa_solve(in, ConfigFrom(a));
  if (!a.out.empty() && r.status != SolveStatus::kAwaitingSolution) {
    write_json_file(a.out, schedule_to_json(r.schedule));
  }
  Emit(solve_report_to_json(r).dump(2) + "\n", a.report);
  if (r.status == SolveStatus::kAwaitingSolution) {
    std::cerr << "model files written; rerun with the solver's solution file(s)\n";
    return kOk;
  }
  return r.status == SolveStatus::kAllScheduled ? kOk : kInfeasible;
}

struct ValidateArgs {
  std::string instance, schedule, mode = "step2", out;
};

int Validate(const ValidateArgs& a) {
  const Instance in = LoadInstance(a.instance);
  const Schedule s = schedule_from_json(read_json_file(a.schedule));
  const ViolationReport v = validate_schedule(in, s, ParseMode(a.mode));
  Emit(violation_report_to_json(v).dump(2) + "\n", a.out);
  if (!v.is_feasible()) std::cerr << explain(v);
  return v.is_feasible() ? kOk : kInfeasible;
}

struct ExportArgs {
  std::string instance, mode = "step2", out, schedule, mst;
};

int Export(const ExportArgs& a) {
  const Instance in = LoadInstance(a.instance);
  const ModelIR model = build_model(in, ParseMode(a.mode));
  Emit(export_lp(model), a.out);
  if (!a.schedule.empty()) {
    if (a.mst.empty()) throw UsageError("--schedule needs --mst for the start file");
    const Schedule s = schedule_from_json(read_json_file(a.schedule));
    write_text_file(a.mst, write_solution(model, encode_schedule(in, s)));
  }
  return kOk;
}

struct GanttArgs {
  std::string instance, schedule, format = "svg", out;
};

int Gantt(const GanttArgs& a) {
  const Instance in = LoadInstance(a.instance);
  const Schedule s = schedule_from_json(read_json_file(a.schedule));
  if (a.format == "svg") {
    Emit(gantt_svg(in, s), a.out);
  } else if (a.format == "text") {
    Emit(gantt_text(in, s), a.out);
  } else {
    throw UsageError("unknown format '" + a.format + "' (use svg or text)");
  }
  return kOk;
}

struct SweepArgs {
  std::string instance, scenarios, csv, json;
  SolveConfig config;
  int parallel = 1;
};

int Sweep(const SweepArgs& a) {
  const Instance in = LoadInstance(a.instance);
  const auto scenarios = scenarios_from_json(read_json_file(a.scenarios));
  const auto defects = validate_config(a.config);
  if (!defects.empty()) throw UsageError(defects.front());
  const auto rows = run_sweep(in, scenarios, a.config, a.parallel);
  Emit(sweep_csv(rows), a.csv);
  if (!a.json.empty()) write_json_file(a.json, sweep_json(rows));
  return kOk;
}

void AddLimits(CLI::App* cmd, SolveConfig& c) {
  cmd->add_option("--step1-limit", c.step1_time_limit, "Step-1 time limit (s)");
  cmd->add_option("--step2-limit", c.step2_time_limit, "Step-2 time limit (s)");
  cmd->add_option("--gap", c.step2_gap_target, "Step-2 relative gap target");
  cmd->add_option("--search-budget", c.search_budget, "Local-search move evaluations");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parallel machine scheduling with limited personnel"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Generate benchmark instances");
  g->add_option("--jobs", gen.params.jobs);
  g->add_option("--machines", gen.params.machines);
  g->add_option("--periods", gen.params.periods);
  g->add_option("--personnel", gen.params.personnel);
  g->add_option("--positions", gen.params.positions, "Positions per machine and period");
  g->add_flag("--time-windows", gen.params.time_windows);
  g->add_flag("--eligibility", gen.params.eligibility);
  g->add_option("--seed", gen.params.seed);
  g->add_flag("--batch", gen.batch, "Every valid combination of the benchmark grid");
  g->add_option("--out", gen.out, "Output file (directory with --batch)");
  g->add_option("--jobs-parallel", gen.parallel, "Batch worker threads")->check(CLI::PositiveNumber);

  SolveArgs sol;
  auto* s = app.add_subcommand("solve", "Two-step solve");
  s->add_option("--instance", sol.instance)->required();
  s->add_option("--backend", sol.backend, "native or export");
  AddLimits(s, sol.config);
  s->add_option("--export-dir", sol.export_dir, "Where LP files are written");
  s->add_option("--solution", sol.solution, "Solver output for step1.lp");
  s->add_option("--step2-solution", sol.step2_solution, "Solver output for step2.lp");
  s->add_option("--out", sol.out, "Schedule JSON");
  s->add_option("--report", sol.report, "Report JSON (default stdout)");

  ValidateArgs val;
  auto* v = app.add_subcommand("validate", "Check a schedule against every constraint");
  v->add_option("--instance", val.instance)->required();
  v->add_option("--schedule", val.schedule)->required();
  v->add_option("--mode", val.mode, "step1 or step2");
  v->add_option("--out", val.out, "Report JSON (default stdout)");

  ExportArgs exp;
  auto* e = app.add_subcommand("export", "Write the model as an LP file");
  e->add_option("--instance", exp.instance)->required();
  e->add_option("--mode", exp.mode, "step1 or step2");
  e->add_option("--out", exp.out, "LP file (default stdout)");
  e->add_option("--schedule", exp.schedule, "Encode this schedule as a start file");
  e->add_option("--mst", exp.mst, "Start file path");

  GanttArgs gan;
  auto* gc = app.add_subcommand("gantt", "Render a schedule");
  gc->add_option("--instance", gan.instance)->required();
  gc->add_option("--schedule", gan.schedule)->required();
  gc->add_option("--format", gan.format, "svg or text");
  gc->add_option("--out", gan.out);

  SweepArgs sw;
  auto* w = app.add_subcommand("sweep", "Solve personnel availability scenarios");
  w->add_option("--instance", sw.instance)->required();
  w->add_option("--scenarios", sw.scenarios)->required();
  w->add_option("--out", sw.csv, "CSV table (default stdout)");
  w->add_option("--json", sw.json, "JSON table");
  w->add_option("--jobs-parallel", sw.parallel, "Concurrent scenario solves")->check(CLI::PositiveNumber);
  AddLimits(w, sw.config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (g->parsed()) return Generate(gen);
    if (s->parsed()) return Solve(sol);
    if (v->parsed()) return Validate(val);
    if (e->parsed()) return Export(exp);
    if (gc->parsed()) return Gantt(gan);
    if (w->parsed()) return Sweep(sw);
  } catch (const ScheduleError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kInfeasible;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
