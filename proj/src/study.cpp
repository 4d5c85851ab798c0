#include "tpmhdg/study.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "tpmhdg/admissibility.hpp"
#include "tpmhdg/error.hpp"

namespace tpmhdg {

BBox default_box() { return BBox{Vec2(-1.0, -1.0), Vec2(1.0, 1.0)}; }

ImplicitDomain example_domain(int example) {
  switch (example) {
    case 0: return ImplicitDomain::square(default_box());
    case 1: return ImplicitDomain::circle(Vec2::Zero(), 0.75);
    case 2: return ImplicitDomain::kidney();
    default: throw std::invalid_argument("example must be 0, 1 or 2");
  }
}

ExactSolution example_solution(int example, int k) {
  switch (example) {
    case 0: return polynomial_solution(k);
    case 1: return example1_solution();
    case 2: return example2_solution();
    default: throw std::invalid_argument("example must be 0, 1 or 2");
  }
}

LevelOutcome run_level(const ImplicitDomain& domain, const ExactSolution& exact, int n, const StudyOptions& opt) {
  LevelOutcome out;
  out.mesh = extract_interior_mesh(generate_background_mesh(default_box(), n), domain);
  out.map = build_transfer_map(out.mesh, domain, opt.strategy, assembly_exactness(opt.k));
  ExactSolution ex = exact;
  if (opt.gamma) ex.gamma = *opt.gamma;
  const ProblemData data = derive_data(ex);
  const StabilizationPair tau = select_tau(out.mesh, data.beta, opt.tau1, assembly_exactness(opt.k));
  out.solution = assemble_and_solve(out.mesh, out.map, data, tau, opt.k, opt.mode, &out.diagnostics);
  out.errors = l2_errors(out.solution, ex, out.mesh, opt.k);
  return out;
}

StudyResult run_study(const StudyOptions& opt) {
  StudyResult result;
  result.example = opt.example == 0 ? "square" : "example" + std::to_string(opt.example);
  const ImplicitDomain domain = example_domain(opt.example);
  const ExactSolution exact = example_solution(opt.example, opt.k);
  for (int n : opt.levels) {
    LevelInfo info;
    info.n = n;
    try {
      LevelOutcome lvl = run_level(domain, exact, n, opt);
      info.N = lvl.mesh.num_elements();
      info.h = lvl.mesh.h_max();
      info.R = lvl.map.R;
      info.widened_searches = lvl.map.widened_searches;
      info.fallback = lvl.diagnostics.fallback;
      const auto constants = compute_facet_constants(lvl.mesh, lvl.map, opt.k);
      const auto report = check_closeness(lvl.mesh, lvl.map, opt.tau1, exact.beta, constants);
      info.a1_failures = report.failures[0];
      ConvergenceRecord rec;
      rec.k = opt.k;
      rec.N = info.N;
      rec.h = info.h;
      rec.errors = lvl.errors;
      result.records.push_back(rec);
    } catch (const std::exception& e) {
      info.failure = e.what();
    }
    result.levels.push_back(info);
  }
  result.records = eoc(std::move(result.records));
  return result;
}

namespace {

std::string sci(double v) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(2) << v;
  return s.str();
}

std::string fixed2(const std::optional<double>& v) {
  if (!v) return "-";
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << *v;
  return s.str();
}

}  // namespace

void write_study_csv(std::ostream& out, const StudyResult& result, bool header) {
  if (header) {
    out << "example,k,N,h";
    for (const char* name : error_names) out << ",e_" << name << ",ord_" << name;
    out << "\n";
  }
  for (const auto& r : result.records) {
    out << result.example << "," << r.k << "," << r.N << "," << std::setprecision(6) << r.h;
    for (std::size_t v = 0; v < 6; ++v) {
      out << "," << std::scientific << std::setprecision(6) << r.errors[v] << std::defaultfloat << ",";
      if (r.orders[v]) out << std::fixed << std::setprecision(4) << *r.orders[v] << std::defaultfloat;
    }
    out << "\n";
  }
}

void write_study_markdown(std::ostream& out, const StudyResult& result) {
  const std::array<std::array<int, 3>, 2> groups{{{err_y, err_q, err_yhat}, {err_z, err_p, err_zhat}}};
  const std::array<std::array<const char*, 3>, 2> labels{{{"y", "q", "ŷ"}, {"z", "p", "ẑ"}}};
  for (std::size_t g = 0; g < 2; ++g) {
    out << "| k | N |";
    for (const char* l : labels[g]) out << " e_" << l << " | order |";
    out << "\n|---|---|---|---|---|---|---|---|\n";
    for (std::size_t i = 0; i < result.records.size(); ++i) {
      const auto& r = result.records[i];
      out << "| " << (i == 0 ? std::to_string(r.k) : "") << " | " << r.N << " |";
      for (int v : groups[g]) {
        const auto idx = static_cast<std::size_t>(v);
        out << " " << sci(r.errors[idx]) << " | " << fixed2(r.orders[idx]) << " |";
      }
      out << "\n";
    }
    out << "\n";
  }
  for (const auto& lvl : result.levels)
    if (lvl.failure) out << "level n=" << lvl.n << " failed: " << *lvl.failure << "\n";
}

}  // namespace tpmhdg
