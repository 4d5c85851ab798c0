#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tpmhdg/assembly.hpp"
#include "tpmhdg/transfer.hpp"

namespace tpmhdg {

/// JSON run configuration.
///
///   example   1, 2 or "square" (fitted box with a polynomial exact solution)
///   k         degree, 0..3
///   n         background grid size (default: first level)
///   levels    background grid sizes for `study` (default [8, 16, 32, 64])
///   tau1      default 1
///   gamma     default 1
///   strategy  "facet-normal" (default) or "vertex-averaged-normal"
///   mode      "condensed" (default, monolithic fallback) or "monolithic"
///   out       output directory (default "out")
///   seed      seed of the randomized property checks (default 12345)
struct RunConfig {
  int example = 1;
  int k = 1;
  int n = 8;
  std::vector<int> levels{8, 16, 32, 64};
  double tau1 = 1.0;
  double gamma = 1.0;
  TransferStrategy strategy = TransferStrategy::facet_normal;
  AssemblyMode mode = AssemblyMode::condensed;
  std::string out = "out";
  std::uint64_t seed = 12345;
};

/// Throws ParseError (unreadable file, malformed JSON with its line) or
/// ValidationError naming the offending field.
RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text);

/// Checks the invariants k in [0, 3], gamma > 0, tau1 > 0, n >= 2.
void validate(const RunConfig& cfg);

}  // namespace tpmhdg
