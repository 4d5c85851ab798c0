#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>

#include "tpmhdg/admissibility.hpp"
#include "tpmhdg/config.hpp"
#include "tpmhdg/error.hpp"
#include "tpmhdg/manufactured.hpp"
#include "tpmhdg/problem.hpp"
#include "tpmhdg/study.hpp"
#include "tpmhdg/suites.hpp"

namespace fs = std::filesystem;
using namespace tpmhdg;

namespace {

enum Exit { ok = 0, validation = 1, numerical = 2, property = 3 };

struct Options {
  std::string config;
  std::string out;
  std::string mode;
  std::string strategy;
  bool quiet = false;
  bool zero_data = false;
};

RunConfig load(const Options& o) {
  RunConfig cfg = o.config.empty() ? RunConfig{} : parse_config(o.config);
  if (!o.out.empty()) cfg.out = o.out;
  try {
    if (!o.mode.empty()) cfg.mode = parse_mode(o.mode);
  } catch (const std::invalid_argument& e) {
    throw ValidationError("mode", e.what());
  }
  try {
    if (!o.strategy.empty()) cfg.strategy = parse_strategy(o.strategy);
  } catch (const std::invalid_argument& e) {
    throw ValidationError("strategy", e.what());
  }
  validate(cfg);
  return cfg;
}

Triangulation config_mesh(const RunConfig& cfg) {
  return extract_interior_mesh(generate_background_mesh(default_box(), cfg.n), example_domain(cfg.example));
}

int mesh_info(const RunConfig& cfg) {
  const auto mesh = config_mesh(cfg);
  const auto map = build_transfer_map(mesh, example_domain(cfg.example), cfg.strategy, 2 * cfg.k + 2);
  std::cout << "elements=" << mesh.num_elements() << "\n"
            << "facets=" << mesh.num_facets() << "\n"
            << "boundary_facets=" << mesh.boundary_facets().size() << "\n"
            << "h=" << mesh.h_max() << "\n"
            << "shape_regularity=" << mesh.shape_regularity() << "\n"
            << "R=" << map.R << "\n"
            << "max_t_norm=" << map.max_t_norm << "\n"
            << "widened_searches=" << map.widened_searches << "\n";
  for (const auto& w : map.warnings) std::cout << "warning=" << w << "\n";
  return ok;
}

int check_assumptions(const RunConfig& cfg, bool quiet) {
  const auto domain = example_domain(cfg.example);
  const auto mesh = config_mesh(cfg);
  const auto map = build_transfer_map(mesh, domain, cfg.strategy, 2 * cfg.k + 2);
  const auto exact = example_solution(cfg.example, cfg.k);
  const auto report = check_closeness(mesh, map, cfg.tau1, exact.beta, compute_facet_constants(mesh, map, cfg.k));
  fs::create_directories(cfg.out);
  {
    std::ofstream csv(fs::path(cfg.out) / "admissibility.csv");
    write_admissibility_csv(csv, report);
    std::ofstream tcsv(fs::path(cfg.out) / "transfer.csv");
    write_transfer_csv(tcsv, map);
  }
  if (!quiet) {
    std::cout << "R=" << report.R << "\n"
              << "max_H_perp=" << report.max_H_perp << "\n"
              << "delta_single=" << report.delta_single << "\n";
    for (int i = 0; i < 6; ++i) std::cout << "A." << i + 1 << "_failures=" << report.failures[static_cast<std::size_t>(i)] << "\n";
    std::cout << "pass=" << (report.pass ? 1 : 0) << "\n";
  }
  return ok;
}

int solve_cmd(const RunConfig& cfg, bool quiet, bool zero) {
  StudyOptions opt;
  opt.example = cfg.example;
  opt.k = cfg.k;
  opt.strategy = cfg.strategy;
  opt.mode = cfg.mode;
  opt.tau1 = cfg.tau1;
  opt.gamma = cfg.gamma;
  ExactSolution exact = example_solution(cfg.example, cfg.k);
  if (zero) exact = zero_solution(exact.beta, cfg.gamma);
  LevelOutcome lvl;
  try {
    lvl = run_level(example_domain(cfg.example), exact, cfg.n, opt);
  } catch (const SingularMatrix&) {
    const auto mesh = config_mesh(cfg);
    const auto map = build_transfer_map(mesh, example_domain(cfg.example), cfg.strategy, 2 * cfg.k + 2);
    const auto report = check_closeness(mesh, map, cfg.tau1, exact.beta, compute_facet_constants(mesh, map, cfg.k));
    for (int i = 0; i < 6; ++i) std::cerr << "A." << i + 1 << "_failures=" << report.failures[static_cast<std::size_t>(i)] << "\n";
    throw;
  }
  write_solution_csv(cfg.out, lvl.solution);
  if (!quiet) {
    print_diagnostics(std::cout, lvl.diagnostics);
    std::cout << std::scientific << std::setprecision(6);
    for (std::size_t i = 0; i < 6; ++i) std::cout << "e_" << error_names[i] << "=" << lvl.errors[i] << "\n";
    std::cout << "max_abs=" << max_abs(lvl.solution) << "\n";
  }
  return ok;
}

int study_cmd(const RunConfig& cfg, bool quiet) {
  StudyOptions opt;
  opt.example = cfg.example;
  opt.k = cfg.k;
  opt.levels = cfg.levels;
  opt.strategy = cfg.strategy;
  opt.mode = cfg.mode;
  opt.tau1 = cfg.tau1;
  opt.gamma = cfg.gamma;
  const StudyResult result = run_study(opt);
  fs::create_directories(cfg.out);
  std::ofstream csv(fs::path(cfg.out) / "study.csv");
  write_study_csv(csv, result);
  std::ofstream md(fs::path(cfg.out) / "study.md");
  write_study_markdown(md, result);
  if (!quiet) write_study_markdown(std::cout, result);
  return result.records.empty() ? numerical : ok;
}

int project_tests(const RunConfig& cfg, bool quiet) {
  bool all = true;
  for (const auto& s : run_property_suites(cfg.seed)) {
    all = all && s.pass();
    if (!quiet)
      std::cout << (s.pass() ? "PASS " : "FAIL ") << s.name << " checks=" << s.checks << " failures=" << s.failures
                << " worst=" << s.worst << " limit=" << s.limit << (s.detail.empty() ? "" : " " + s.detail) << "\n";
  }
  return all ? ok : property;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unfitted HDG solver for convection-diffusion optimal control"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--config", o.config, "JSON run configuration");
  app.add_option("--out", o.out, "output directory");
  app.add_option("--mode", o.mode, "monolithic | condensed");
  app.add_option("--strategy", o.strategy, "facet-normal | vertex-averaged-normal");
  app.add_flag("--quiet", o.quiet, "suppress console reports");

  auto* mesh_cmd = app.add_subcommand("mesh-info", "mesh and transfer map summary");
  auto* check_cmd = app.add_subcommand("check-assumptions", "write the closeness assumption report");
  auto* solve_sub = app.add_subcommand("solve", "solve one level and write solution CSVs");
  solve_sub->add_flag("--zero-data", o.zero_data, "use zero data (uniqueness check)");
  auto* study_sub = app.add_subcommand("study", "convergence study over the configured levels");
  auto* tests_sub = app.add_subcommand("project-tests", "projection and Lambda property suites");
  for (auto* sub : {mesh_cmd, check_cmd, solve_sub, study_sub, tests_sub}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? ok : validation;
  }

  try {
    const RunConfig cfg = load(o);
    if (*mesh_cmd) return mesh_info(cfg);
    if (*check_cmd) return check_assumptions(cfg, o.quiet);
    if (*solve_sub) return solve_cmd(cfg, o.quiet, o.zero_data);
    if (*study_sub) return study_cmd(cfg, o.quiet);
    if (*tests_sub) return project_tests(cfg, o.quiet);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return validation;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return validation;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return numerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return numerical;
  }
  return ok;
}
