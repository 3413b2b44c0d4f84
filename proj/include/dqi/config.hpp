#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dqi/family.hpp"
#include "dqi/inequalities.hpp"
#include "dqi/starbody.hpp"

namespace dqi {

// CLI flag values that take precedence over the config file.
struct ConfigOverrides {
  std::optional<uint64_t> seed;
  std::optional<int> outer_res;
  std::optional<int> inner_res;
  std::optional<std::string> out_dir;
  std::optional<std::string> format;
};

// Quantity tracked across the resolution ladder: either a plain body's
// dual quermassintegral or the fused double integral over n-1 bodies.
struct LadderTarget {
  std::vector<Body> bodies;
  bool fused = false;
  double i = 0.0;
};

struct SearchConfig {
  std::string check;
  std::string family_kind;
  double i = 0.0;
  int j = 1;
  double alpha = 1.0;
  int budget = 200;
};

struct SuiteConfig {
  int n = 3;
  uint64_t seed = 1;
  CheckRules rules;
  std::map<std::string, Body, std::less<>> bodies;
  std::vector<PlannedCheck> checks;
  std::vector<int> ladder;
  std::optional<LadderTarget> target;
  std::optional<SearchConfig> search;
  std::string out_dir = ".";
  std::string format = "csv";
};

// Accepts a filesystem path or a "builtin:<name>" suite id.
SuiteConfig load_suite_config(const std::string& path_or_builtin, const ConfigOverrides& ov);

// Parses config text directly (used by load_suite_config and tests).
SuiteConfig parse_suite_config(const std::string& json_text, const ConfigOverrides& ov);

}  // namespace dqi
