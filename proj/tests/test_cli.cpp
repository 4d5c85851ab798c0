#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "tpmhdg/config.hpp"
#include "tpmhdg/error.hpp"
#include "tpmhdg/parallel.hpp"
#include "tpmhdg/study.hpp"

using namespace tpmhdg;

TEST_CASE("config parsing") {
  SUBCASE("defaults") {
    const auto cfg = parse_config_text("{}");
    CHECK(cfg.example == 1);
    CHECK(cfg.k == 1);
    CHECK(cfg.tau1 == 1.0);
    CHECK(cfg.gamma == 1.0);
    CHECK(cfg.levels == std::vector<int>{8, 16, 32, 64});
    CHECK(cfg.strategy == TransferStrategy::facet_normal);
    CHECK(cfg.mode == AssemblyMode::condensed);
  }
  SUBCASE("explicit fields") {
    const auto cfg = parse_config_text(
        R"({"example": "square", "k": 2, "levels": [4, 8], "strategy": "vertex-averaged-normal",
            "mode": "monolithic", "gamma": 0.5, "out": "res"})");
    CHECK(cfg.example == 0);
    CHECK(cfg.k == 2);
    CHECK(cfg.levels == std::vector<int>{4, 8});
    CHECK(cfg.strategy == TransferStrategy::vertex_averaged_normal);
    CHECK(cfg.mode == AssemblyMode::monolithic);
    CHECK(cfg.gamma == 0.5);
    CHECK(cfg.out == "res");
  }
  SUBCASE("invalid values name their field") {
    for (const auto& [text, field] : {std::pair{R"({"k": 5})", "k"}, std::pair{R"({"gamma": 0})", "gamma"},
                                      std::pair{R"({"tau1": -1})", "tau1"}, std::pair{R"({"n": 1})", "n"},
                                      std::pair{R"({"example": 3})", "example"}}) {
      try {
        parse_config_text(text);
        FAIL("expected a validation error for " << text);
      } catch (const ValidationError& e) {
        CHECK(e.field() == field);
      }
    }
  }
  SUBCASE("malformed input") {
    CHECK_THROWS_AS(parse_config("/nonexistent/run.json"), ParseError);
    try {
      parse_config_text("{\n  \"k\": 1,\n  \"gamma\": ,\n}");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }
  SUBCASE("file round trip") {
    const auto path = std::filesystem::temp_directory_path() / "tpmhdg_cfg.json";
    std::ofstream(path) << R"({"example": 2, "k": 0})";
    const auto cfg = parse_config(path.string());
    CHECK(cfg.example == 2);
    CHECK(cfg.k == 0);
    std::filesystem::remove(path);
  }
}

TEST_CASE("parallel loop") {
  std::vector<int> hits(1000, 0);
  parallel_for(1000, [&](int i) { hits[static_cast<std::size_t>(i)] += i; });
  for (int i = 0; i < 1000; ++i) CHECK(hits[static_cast<std::size_t>(i)] == i);
  parallel_for(0, [](int) { throw std::logic_error("not called"); });

  std::atomic<int> calls{0};
  try {
    parallel_for(200, [&](int i) {
      ++calls;
      if (i == 17 || i == 150) throw std::runtime_error(std::to_string(i));
    });
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "17");
  }
  CHECK(worker_count() >= 1);
}

TEST_CASE("study output is deterministic") {
  StudyOptions opt;
  opt.example = 2;
  opt.k = 1;
  opt.levels = {8, 16};
  std::ostringstream a, b;
  write_study_csv(a, run_study(opt));
  write_study_csv(b, run_study(opt));
  CHECK(a.str() == b.str());
}
