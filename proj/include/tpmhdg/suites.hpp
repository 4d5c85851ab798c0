#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tpmhdg {

struct SuiteResult {
  std::string name;
  int checks = 0;
  int failures = 0;
  double worst = 0.0;   ///< worst measured quantity (residual, ratio or order, see name)
  double limit = 0.0;   ///< threshold the worst value is compared with
  std::string detail;

  bool pass() const { return checks > 0 && failures == 0; }
};

/// Defining-equation residuals of both HDG projections for `samples` random
/// smooth inputs on every element of a circle mesh and a fitted square mesh, k = 0..3.
SuiteResult projection_residual_suite(std::uint64_t seed, int samples = 20);

/// Projections of random in-space pairs reproduce the input coefficients.
SuiteResult projection_reproduction_suite(std::uint64_t seed, int samples = 5);

/// Smallest measured order minus k of both projections over fitted-square refinements n = 8, 16, 32.
SuiteResult projection_rate_suite();

/// Closed-form Lambda values and the path integral identities.
SuiteResult lambda_suite(std::uint64_t seed);

/// Lambda bounds (a) and (b) for random polynomial fields on boundary patches of a circle mesh.
SuiteResult lambda_bound_suite(std::uint64_t seed, int fields = 100, int patches = 10);

std::vector<SuiteResult> run_property_suites(std::uint64_t seed);

}  // namespace tpmhdg
