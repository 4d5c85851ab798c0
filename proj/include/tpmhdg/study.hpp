#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tpmhdg/assembly.hpp"
#include "tpmhdg/domain.hpp"
#include "tpmhdg/errors.hpp"
#include "tpmhdg/transfer.hpp"

namespace tpmhdg {

/// Background grid box shared by both examples.
BBox default_box();

/// Example 1: circle x^2 + y^2 <= 0.75; example 2: kidney; example 0: the box itself (fitted).
ImplicitDomain example_domain(int example);
ExactSolution example_solution(int example, int k = 1);

struct StudyOptions {
  int example = 1;
  int k = 1;
  std::vector<int> levels{8, 16, 32, 64};
  TransferStrategy strategy = TransferStrategy::facet_normal;
  AssemblyMode mode = AssemblyMode::condensed;
  double tau1 = 1.0;
  std::optional<double> gamma;  ///< overrides the exact solution's gamma
};

struct LevelInfo {
  int n = 0;
  int N = 0;
  double h = 0.0;
  double R = 0.0;
  int a1_failures = 0;
  int widened_searches = 0;
  bool fallback = false;
  std::optional<std::string> failure;
};

struct StudyResult {
  std::string example;
  std::vector<ConvergenceRecord> records;  ///< successful levels, orders filled
  std::vector<LevelInfo> levels;           ///< every attempted level
};

/// Pipeline at one level: clip, transfer map, stabilization, assemble, solve, errors.
struct LevelOutcome {
  Triangulation mesh;
  TransferMap map;
  HDGSolution solution;
  SolveDiagnostics diagnostics;
  ErrorSet errors{};
};

LevelOutcome run_level(const ImplicitDomain& domain, const ExactSolution& exact, int n, const StudyOptions& opt);

/// Failed levels are recorded with their cause and skipped.
StudyResult run_study(const StudyOptions& opt);

/// Header example,k,N,h,e_y,ord_y,e_q,ord_q,e_yhat,ord_yhat,e_z,ord_z,e_p,ord_p,e_zhat,ord_zhat.
void write_study_csv(std::ostream& out, const StudyResult& result, bool header = true);

/// Two tables (state, adjoint), each with k, N and error/order triples.
void write_study_markdown(std::ostream& out, const StudyResult& result);

}  // namespace tpmhdg
