#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "dqi/config.hpp"
#include "dqi/errors.hpp"
#include "dqi/quadrature.hpp"
#include "dqi/report.hpp"
#include "dqi/suite.hpp"

using namespace dqi;
namespace fs = std::filesystem;

namespace {

SuiteConfig parse(const std::string& text, const ConfigOverrides& ov = {}) {
  return parse_suite_config(text, ov);
}

std::string error_of(const std::string& text) {
  try {
    parse_suite_config(text, {});
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag)
      : path(fs::temp_directory_path() /
             ("dqi_cli_" + tag + "_" + std::to_string(::getpid()))) {
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

size_t comma_cells(const std::string& line) {
  return static_cast<size_t>(std::count(line.begin(), line.end(), ',')) + 1;
}

const char* const kTwoCheckConfig = R"({
  "n": 3, "seed": 9,
  "resolutions": {"outer": 8, "inner": 8},
  "bodies": {
    "B": {"ball": {"r": 1.0}},
    "K": {"dilate": {"lambda": 1.5, "K": "B"}}
  },
  "checks": [
    {"check": "minkowski_mixed", "K": "K", "L": "B", "i": 0, "j": 1},
    {"check": "lemma_c", "a": 4, "b": 1, "c": 1, "d": 4, "p": 0.5}
  ]
})";

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("malformed and mistyped configs are rejected") {
    CHECK(error_of("{ not json").find("config:") == 0);
    CHECK(error_of("[1, 2]").find("top level") != std::string::npos);
    CHECK(error_of(R"({"frobnicate": 1})").find("unknown key") != std::string::npos);
    CHECK(error_of(R"({"n": 2})").find("n:") != std::string::npos);
    CHECK(error_of(R"({"seed": -4})").find("seed") != std::string::npos);
    CHECK(error_of(R"({"resolutions": {"outer": 3}})").find(">= 4") != std::string::npos);
    CHECK(error_of(R"({"tolerance": -1})").find("tolerance") != std::string::npos);
    CHECK(error_of(R"({"tolerance": "loose"})").find("tolerance") != std::string::npos);
    CHECK(error_of(R"({"output": {"format": "xml"}})").find("format") != std::string::npos);
  }

  TEST_CASE("undefined body references report the missing name") {
    const std::string msg = error_of(R"({
      "bodies": {"B": {"ball": {"r": 1}}},
      "checks": [{"check": "bm_corollary", "K": "Q", "L": "B", "i": 0}]
    })");
    CHECK(msg.find("undefined body \"Q\"") != std::string::npos);
  }

  TEST_CASE("body definition errors carry the body name") {
    CHECK(error_of(R"({"bodies": {"E": {"ellipsoid": {"axes": [1, 2]}}}})")
              .find("body \"E\"") != std::string::npos);
    CHECK(error_of(R"({"bodies": {"X": {"wedge": {}}}})").find("unknown body kind") !=
          std::string::npos);
    CHECK(error_of(R"({"bodies": {"B": {"ball": {"r": 1}, "extra": {}}}})")
              .find("exactly one") != std::string::npos);
  }

  TEST_CASE("checker, ladder, target and search stanzas are validated") {
    CHECK(error_of(R"({"checks": [{"check": "sharpen"}]})").find("unknown checker") !=
          std::string::npos);
    CHECK(error_of(R"({"ladder": [8]})").find("ladder") != std::string::npos);
    CHECK(error_of(R"({"ladder": [8, 8]})").find("increase") != std::string::npos);
    CHECK(error_of(R"({"ladder": [3, 8]})").find(">= 4") != std::string::npos);
    CHECK(error_of(R"({"sweep": {"tuples": 0}})").find("tuples") != std::string::npos);
    CHECK(error_of(R"({
      "bodies": {"B": {"ball": {"r": 1}}},
      "target": {"bodies": ["B"], "i": 0}
    })").find("exactly 2") != std::string::npos);
    CHECK(error_of(R"({
      "search": {"check": "minkowski_mixed", "family": {"kind": "ball_pair"}, "budget": 0}
    })").find("budget") != std::string::npos);
  }

  TEST_CASE("every body kind parses and evaluates") {
    const SuiteConfig cfg = parse(R"({
      "n": 3,
      "resolutions": {"outer": 8, "inner": 8},
      "bodies": {
        "B": {"ball": {"r": 1.5}},
        "E": {"ellipsoid": {"axes": [1.0, 1.0, 2.0]}},
        "P": {"lpball": {"p": 1.0, "s": 2.0}},
        "U": {"bump": {"c0": 1.0, "terms": [{"c": 0.3, "v": [0, 0, 1], "m": 2}]}},
        "C": {"combine": {"lambda": 0.5, "K": "B", "mu": 2.0, "L": "E"}},
        "D": {"dilate": {"lambda": 2.0, "K": "E"}},
        "I": {"intersection": {"bodies": ["E", "B"], "inner_res": 8}}
      }
    })");
    REQUIRE(cfg.bodies.size() == 7);
    const std::vector<double> e3 = {0.0, 0.0, 1.0};
    CHECK(cfg.bodies.at("B").radial(e3) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(cfg.bodies.at("E").radial(e3) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(cfg.bodies.at("P").radial(e3) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(cfg.bodies.at("U").radial(e3) == doctest::Approx(1.3).epsilon(1e-15));
    CHECK(cfg.bodies.at("C").radial(e3) == doctest::Approx(0.5 * 1.5 + 2.0 * 2.0).epsilon(1e-15));
    CHECK(cfg.bodies.at("D").radial(e3) == doctest::Approx(4.0).epsilon(1e-15));
    // the equatorial section of E is the unit circle, so the section mean
    // against a radius-1.5 ball is exactly pi * 1.5
    CHECK(cfg.bodies.at("I").radial(e3) == doctest::Approx(kPi * 1.5).epsilon(1e-13));
  }

  TEST_CASE("builtin suites resolve by name") {
    const SuiteConfig smoke = load_suite_config("builtin:paper-smoke", {});
    CHECK(smoke.n == 3);
    CHECK(smoke.rules.outer_res == 16);
    CHECK(smoke.checks.size() == 9);
    CHECK(smoke.bodies.count("B") == 1);
    CHECK(smoke.bodies.count("D") == 1);

    const SuiteConfig random = load_suite_config("builtin:paper-random", {});
    CHECK(random.seed == 42);
    CHECK(random.checks.size() == 45);

    CHECK_THROWS_AS(load_suite_config("builtin:nope", {}), ConfigError);
    CHECK_THROWS_AS(load_suite_config("/no/such/file.json", {}), ConfigError);
  }

  TEST_CASE("cli overrides replace file values before sweep generation") {
    const char* const sweep_cfg = R"({
      "n": 3, "seed": 5,
      "resolutions": {"outer": 6, "inner": 6},
      "sweep": {"checks": ["minkowski_mixed"], "tuples": 1}
    })";
    ConfigOverrides ov;
    ov.seed = 77;
    ov.outer_res = 8;
    ov.format = "json";
    ov.out_dir = "somewhere";
    const SuiteConfig cfg = parse(sweep_cfg, ov);
    CHECK(cfg.seed == 77);
    CHECK(cfg.rules.outer_res == 8);
    CHECK(cfg.rules.inner_res == 6);
    CHECK(cfg.format == "json");
    CHECK(cfg.out_dir == "somewhere");

    // the same seed written into the file yields the same planned instance
    const char* const sweep_cfg_77 = R"({
      "n": 3, "seed": 77,
      "resolutions": {"outer": 8, "inner": 6},
      "sweep": {"checks": ["minkowski_mixed"], "tuples": 1}
    })";
    const SuiteConfig same = parse(sweep_cfg_77, {});
    REQUIRE(cfg.checks.size() == 1);
    REQUIRE(same.checks.size() == 1);
    const IneqReport a = cfg.checks[0].run();
    const IneqReport b = same.checks[0].run();
    CHECK(a.lhs == b.lhs);
    CHECK(a.rhs == b.rhs);

    // while the file's own seed yields a different instance
    const SuiteConfig other = parse(sweep_cfg, {});
    const IneqReport c = other.checks[0].run();
    CHECK(a.lhs != c.lhs);
  }

  TEST_CASE("override resolutions are validated like file ones") {
    ConfigOverrides ov;
    ov.inner_res = 2;
    CHECK_THROWS_AS(parse(kTwoCheckConfig, ov), ConfigError);
    ConfigOverrides bad_fmt;
    bad_fmt.format = "yaml";
    CHECK_THROWS_AS(parse(kTwoCheckConfig, bad_fmt), ConfigError);
  }

  TEST_CASE("verify writes a byte-stable csv report") {
    TempDir dir_a("verify_a"), dir_b("verify_b");
    ConfigOverrides ov;
    ov.out_dir = dir_a.path.string();
    SuiteConfig cfg = parse(kTwoCheckConfig, ov);
    std::ostringstream log;
    CHECK(run_verify(cfg, log) == 0);
    CHECK(log.str().find("2 checks, 0 failed") != std::string::npos);
    CHECK(log.str().find("minkowski_mixed: equality-confirmed") != std::string::npos);

    const std::string report = slurp(dir_a.path / "report.csv");
    const std::vector<std::string> rows = lines_of(report);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == kReportCsvHeader);
    for (const std::string& row : rows) CHECK(comma_cells(row) == 17);
    CHECK(rows[1].find("minkowski_mixed,minkowski-mixed-intersection,3,0,1,,,") == 0);
    CHECK(rows[2].find("lemma_c,two-term-power-mean,3,,,,,4,") == 0);

    const auto meta = nlohmann::json::parse(slurp(dir_a.path / "meta.json"));
    CHECK(meta.at("command") == "verify");
    CHECK(meta.at("rows") == 2);
    CHECK(meta.at("seed") == 9);
    CHECK(meta.contains("generated_at"));

    // a second run into another directory produces identical report bytes
    cfg.out_dir = dir_b.path.string();
    std::ostringstream log2;
    CHECK(run_verify(cfg, log2) == 0);
    CHECK(slurp(dir_b.path / "report.csv") == report);
  }

  TEST_CASE("verify can emit json instead") {
    TempDir dir("verify_json");
    ConfigOverrides ov;
    ov.out_dir = dir.path.string();
    ov.format = "json";
    const SuiteConfig cfg = parse(kTwoCheckConfig, ov);
    std::ostringstream log;
    CHECK(run_verify(cfg, log) == 0);
    const auto doc = nlohmann::json::parse(slurp(dir.path / "report.json"));
    REQUIRE(doc.at("rows").size() == 2);
    const auto& row = doc.at("rows").at(0);
    CHECK(row.at("check_name") == "minkowski_mixed");
    CHECK(row.at("paper_ref") == "minkowski-mixed-intersection");
    CHECK(row.at("j") == 1);
    CHECK(row.at("r").is_null());
    CHECK(row.at("verdict") == "equality-confirmed");
    CHECK(doc.at("rows").at(1).at("notes").contains("cross_difference"));
  }

  TEST_CASE("converge tracks a plain body target") {
    TempDir dir("converge_plain");
    ConfigOverrides ov;
    ov.out_dir = dir.path.string();
    const SuiteConfig cfg = parse(R"({
      "n": 3,
      "bodies": {"E": {"ellipsoid": {"axes": [1.0, 1.0, 2.0]}}},
      "ladder": [6, 10, 16],
      "target": {"body": "E", "i": 0}
    })", ov);
    std::ostringstream log;
    CHECK(run_converge(cfg, log) == 0);
    const std::vector<std::string> rows = lines_of(slurp(dir.path / "converge.csv"));
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == "outer_res,inner_res,value,diff_prev");
    CHECK(rows[1].find("6,,") == 0);
    CHECK(rows[1].back() == ',');  // no diff on the first row
    CHECK(rows[3].find("16,,") == 0);
    const double exact = 8.0 * kPi / 3.0;  // ellipsoid volume
    double prev_err = std::numeric_limits<double>::infinity();
    for (size_t r = 1; r < rows.size(); ++r) {
      const size_t start = rows[r].find(",,") + 2;
      const double value = std::stod(rows[r].substr(start));
      const double err = std::abs(value - exact) / exact;
      CHECK(err < prev_err);  // each rung tightens toward the closed form
      prev_err = err;
    }
    CHECK(prev_err <= 1e-6);
  }

  TEST_CASE("converge tracks a fused target with matching inner resolution") {
    TempDir dir("converge_fused");
    ConfigOverrides ov;
    ov.out_dir = dir.path.string();
    ov.format = "json";
    const SuiteConfig cfg = parse(R"({
      "n": 3,
      "bodies": {"E": {"ellipsoid": {"axes": [1.0, 1.0, 2.0]}}},
      "ladder": [6, 12],
      "target": {"bodies": ["E", "E"], "i": 0}
    })", ov);
    std::ostringstream log;
    CHECK(run_converge(cfg, log) == 0);
    const auto doc = nlohmann::json::parse(slurp(dir.path / "converge.json"));
    REQUIRE(doc.at("rows").size() == 2);
    CHECK(doc.at("rows").at(0).at("inner_res") == 6);
    CHECK(doc.at("rows").at(0).at("diff_prev").is_null());
    CHECK(doc.at("rows").at(1).at("inner_res") == 12);
    CHECK(doc.at("rows").at(1).at("value").get<double>() >
          doc.at("rows").at(0).at("value").get<double>());
  }

  TEST_CASE("converge requires a ladder and a target") {
    std::ostringstream log;
    SuiteConfig no_ladder = parse(R"({
      "bodies": {"B": {"ball": {"r": 1}}},
      "target": {"body": "B", "i": 0}
    })");
    CHECK_THROWS_AS(run_converge(no_ladder, log), ConfigError);
    SuiteConfig no_target = parse(R"({"ladder": [6, 10]})");
    CHECK_THROWS_AS(run_converge(no_target, log), ConfigError);
  }

  TEST_CASE("search writes a monotone trace") {
    TempDir dir("search");
    ConfigOverrides ov;
    ov.out_dir = dir.path.string();
    const SuiteConfig cfg = parse(R"({
      "n": 3, "seed": 7,
      "resolutions": {"outer": 8, "inner": 8},
      "search": {
        "check": "minkowski_mixed",
        "family": {"kind": "ellipsoid_ratio"},
        "params": {"i": 0, "j": 1},
        "budget": 40
      }
    })", ov);
    std::ostringstream log;
    CHECK(run_search(cfg, log) == 0);
    CHECK(log.str().find("best rel_slack") != std::string::npos);
    const std::vector<std::string> rows = lines_of(slurp(dir.path / "trace.csv"));
    REQUIRE(rows.size() >= 3);
    CHECK(rows.size() <= 41);
    CHECK(rows[0] == "eval,rel_slack,best_so_far,p0");
    double prev_best = std::numeric_limits<double>::infinity();
    for (size_t r = 1; r < rows.size(); ++r) {
      std::istringstream cells(rows[r]);
      std::string eval_s, slack_s, best_s;
      std::getline(cells, eval_s, ',');
      std::getline(cells, slack_s, ',');
      std::getline(cells, best_s, ',');
      CHECK(std::stoi(eval_s) == static_cast<int>(r));
      const double best = std::stod(best_s);
      CHECK(best <= prev_best);
      prev_best = best;
    }
  }

  TEST_CASE("search requires its stanza and a known family") {
    std::ostringstream log;
    SuiteConfig plain = parse(R"({"n": 3})");
    CHECK_THROWS_AS(run_search(plain, log), ConfigError);
    SuiteConfig bad_kind = parse(R"({
      "search": {"check": "minkowski_mixed", "family": {"kind": "torus"}}
    })");
    CHECK_THROWS_AS(run_search(bad_kind, log), ConfigError);
    SuiteConfig bad_check = parse(R"({
      "search": {"check": "lemma_c", "family": {"kind": "ball_pair"}}
    })");
    CHECK_THROWS_AS(run_search(bad_check, log), ConfigError);
  }

  TEST_CASE("report doubles round-trip through their text form") {
    for (const double v : {kPi, 0.1, 1.0 / 3.0, 1e300, 1e-300, 0.0, -2.5,
                           8.0 * kPi / 3.0}) {
      CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(-0.5) == "-0.5");
  }
}
