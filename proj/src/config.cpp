#include "tpmhdg/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tpmhdg/error.hpp"

namespace tpmhdg {

namespace {

using nlohmann::json;

template <typename T>
T get_field(const json& j, const char* field) {
  try {
    return j.at(field).get<T>();
  } catch (const json::exception& e) {
    throw ValidationError(field, std::string("wrong type (") + e.what() + ")");
  }
}

TransferStrategy strategy_from(const std::string& s) {
  try {
    return parse_strategy(s);
  } catch (const std::exception&) {
    throw ValidationError("strategy", "unknown strategy '" + s + "'");
  }
}

}  // namespace

void validate(const RunConfig& cfg) {
  if (cfg.example < 0 || cfg.example > 2) throw ValidationError("example", "must be 1, 2 or \"square\"");
  if (cfg.k < 0 || cfg.k > 3) throw ValidationError("k", "must be in [0, 3]");
  if (!(cfg.gamma > 0.0)) throw ValidationError("gamma", "must be positive");
  if (!(cfg.tau1 > 0.0)) throw ValidationError("tau1", "must be positive");
  if (cfg.n < 2) throw ValidationError("n", "must be >= 2");
  if (cfg.levels.empty()) throw ValidationError("levels", "must not be empty");
  for (int n : cfg.levels)
    if (n < 2) throw ValidationError("levels", "every level must be >= 2");
}

RunConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw ParseError("line " + std::to_string(line) + ": " + e.what());
  }
  if (!j.is_object()) throw ParseError("line 1: configuration must be a JSON object");

  RunConfig cfg;
  if (j.contains("example")) {
    const json& ex = j["example"];
    if (ex.is_string() && ex.get<std::string>() == "square") {
      cfg.example = 0;
    } else if (ex.is_number_integer() && (ex.get<int>() == 1 || ex.get<int>() == 2)) {
      cfg.example = ex.get<int>();
    } else {
      throw ValidationError("example", "must be 1, 2 or \"square\"");
    }
  }
  if (j.contains("k")) cfg.k = get_field<int>(j, "k");
  if (j.contains("levels")) cfg.levels = get_field<std::vector<int>>(j, "levels");
  cfg.n = j.contains("n") ? get_field<int>(j, "n") : (cfg.levels.empty() ? cfg.n : cfg.levels.front());
  if (j.contains("tau1")) cfg.tau1 = get_field<double>(j, "tau1");
  if (j.contains("gamma")) cfg.gamma = get_field<double>(j, "gamma");
  if (j.contains("strategy")) cfg.strategy = strategy_from(get_field<std::string>(j, "strategy"));
  if (j.contains("mode")) {
    try {
      cfg.mode = parse_mode(get_field<std::string>(j, "mode"));
    } catch (const std::invalid_argument& e) {
      throw ValidationError("mode", e.what());
    }
  }
  if (j.contains("out")) cfg.out = get_field<std::string>(j, "out");
  if (j.contains("seed")) cfg.seed = get_field<std::uint64_t>(j, "seed");
  validate(cfg);
  return cfg;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace tpmhdg
