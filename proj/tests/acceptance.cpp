// Acceptance gate: nine end-to-end criteria, one [PASS]/[FAIL] line each.
// argv[1] is the path to the command line binary (used by criteria 8 and 9).
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "dqi/config.hpp"
#include "dqi/dualvol.hpp"
#include "dqi/family.hpp"
#include "dqi/inequalities.hpp"
#include "dqi/intersect.hpp"
#include "dqi/mc.hpp"
#include "dqi/quadrature.hpp"
#include "dqi/starbody.hpp"
#include "dqi/suite.hpp"

using namespace dqi;
namespace fs = std::filesystem;
using clock_type = std::chrono::steady_clock;

namespace {

int failures = 0;
std::string cli_path;
fs::path work;

void verdict_line(int id, const char* title, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", id, title, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

void run_criterion(int id, const char* title, const std::function<std::pair<bool, std::string>()>& body) {
  try {
    const auto [ok, detail] = body();
    verdict_line(id, title, ok, detail);
  } catch (const std::exception& e) {
    verdict_line(id, title, false, std::string("exception: ") + e.what());
  }
}

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

struct CliResult {
  int code = -1;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  static int invocation = 0;
  const fs::path log = work / ("cli_" + std::to_string(invocation++) + ".log");
  const std::string cmd = cli_path + " " + args + " > " + log.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  CliResult r;
  r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(log);
  std::ostringstream text;
  text << in.rdbuf();
  r.output = text.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

// ---- criterion bodies ----

std::pair<bool, std::string> ball_calculus() {
  const auto t0 = clock_type::now();
  const SphereRule rule = build_sphere_rule(2, 32);
  const Body b1 = Body::ball(3, 1.0);
  const Body b2 = Body::ball(3, 2.0);
  const double pi3 = kPi * kPi * kPi;

  double worst = 0.0;
  auto track = [&worst](double got, double want) {
    worst = std::max(worst, rel_err(got, want));
  };

  track(dual_quermassintegral(b2, 0.0, rule), (4.0 * kPi / 3.0) * 8.0);
  track(dual_quermassintegral(b2, 0.5, rule), (4.0 * kPi / 3.0) * std::pow(2.0, 2.5));
  const std::vector<Body> mixed = {Body::ball(3, 1.5), Body::ball(3, 1.5), Body::ball(3, 0.5)};
  track(dual_mixed_volume(mixed, rule), (4.0 * kPi / 3.0) * 1.5 * 1.5 * 0.5);

  const Body ib = intersection_body(b1, 32);
  const std::vector<double> e3 = {0.0, 0.0, 1.0};
  track(eval_radial(ib, e3), kPi);
  track(eval_radial(intersection_body(b2, 32), e3), 4.0 * kPi);
  track(dual_quermassintegral(ib, 0.0, rule), (4.0 * kPi / 3.0) * pi3);
  track(dual_quermassintegral(ib, 1.0, rule), 4.0 * pi3 / 3.0);

  const CheckRules rules{3, 32, 32, TolPolicy::auto_policy()};
  const IneqReport mk = check_minkowski_mixed(b1, b2, 0.0, 1, rules);
  const double both = 1024.0 * std::pow(kPi, 8) / 9.0;
  track(mk.lhs, both);
  track(mk.rhs, both);

  const double dt = seconds_since(t0);
  const bool ok = worst <= 1e-8 && dt < 5.0;
  return {ok, fmt("worst rel err %.2e, %.2fs", worst, dt)};
}

std::pair<bool, std::string> identity_suites() {
  // suite A: pointwise radial algebra, 60 instances, tolerance 1e-14
  double worst_a = 0.0;
  for (int s = 0; s < 60; ++s) {
    SplitMix64 rng(mix64(1000 + static_cast<uint64_t>(s)));
    const int n = (s % 5 == 4) ? 4 : 3;
    const Body k = random_body(rng, n);
    const Body l = random_body(rng, n);
    const double lam = rng.uniform(0.2, 2.0);
    const double mu = rng.uniform(0.2, 2.0);
    const std::vector<double> u = random_unit_vector(rng, n);
    const double direct = eval_radial(radial_combine(lam, k, mu, l), u);
    const double split = lam * eval_radial(k, u) + mu * eval_radial(l, u);
    worst_a = std::max(worst_a, rel_err(direct, split));
    worst_a = std::max(worst_a, rel_err(eval_radial(dilate(lam, k), u), lam * eval_radial(k, u)));
  }

  // suite B: quadrature-mediated volume identities, 50 instances, 1e-10
  double worst_b = 0.0;
  for (int s = 0; s < 50; ++s) {
    SplitMix64 rng(mix64(2000 + static_cast<uint64_t>(s)));
    const int n = (s % 5 == 4) ? 4 : 3;
    const SphereRule rule = build_sphere_rule(n - 1, n == 3 ? 12 : 8);
    std::vector<Body> triple;
    for (int b = 0; b < n; ++b) triple.push_back(random_body(rng, n));
    const double base = dual_mixed_volume(triple, rule);
    std::rotate(triple.begin(), triple.begin() + 1, triple.end());
    std::swap(triple[0], triple[1]);
    worst_b = std::max(worst_b, rel_err(dual_mixed_volume(triple, rule), base));

    const Body k = triple[0];
    const double lam = rng.uniform(0.3, 1.8);
    const double i = rng.uniform(0.0, n - 0.01);
    worst_b = std::max(worst_b, rel_err(dual_quermassintegral(dilate(lam, k), i, rule),
                                        std::pow(lam, n - i) * dual_quermassintegral(k, i, rule)));

    const ExpansionReport exp_rep =
        expansion_check(triple[0], triple[1], rng.uniform(0.2, 1.5), rng.uniform(0.2, 1.5), rule);
    worst_b = std::max(worst_b, exp_rep.difference / exp_rep.direct);
  }

  // suite C: section and intersection body identities, 50 instances, 1e-10
  double worst_c = 0.0;
  for (int s = 0; s < 50; ++s) {
    SplitMix64 rng(mix64(3000 + static_cast<uint64_t>(s)));
    const Body k = random_body(rng, 3);
    const Body l = random_body(rng, 3);
    const Body m = random_body(rng, 3);
    const double lam = rng.uniform(0.2, 1.6);
    const double mu = rng.uniform(0.2, 1.6);
    const std::vector<double> u = random_unit_vector(rng, 3);

    const Body direct = mixed_intersection_body({radial_combine(lam, k, mu, m), l}, 10);
    const Body part_k = mixed_intersection_body({k, l}, 10);
    const Body part_m = mixed_intersection_body({m, l}, 10);
    worst_c = std::max(worst_c, rel_err(eval_radial(direct, u),
                                        lam * eval_radial(part_k, u) + mu * eval_radial(part_m, u)));

    const Body scaled = mixed_intersection_body({dilate(lam, k), dilate(mu, l)}, 10);
    const Body plain = mixed_intersection_body({k, l}, 10);
    worst_c = std::max(worst_c, rel_err(eval_radial(scaled, u), lam * mu * eval_radial(plain, u)));

    std::vector<double> neg(u);
    for (double& x : neg) x = -x;
    worst_c = std::max(worst_c, std::abs(eval_radial(plain, u) - eval_radial(plain, neg)));
  }

  const bool ok = worst_a <= 1e-14 && worst_b <= 1e-10 && worst_c <= 1e-10;
  return {ok, fmt("worst rel err: algebraic %.2e, volume %.2e, section %.2e", worst_a, worst_b,
                  worst_c)};
}

std::pair<bool, std::string> fused_agreement() {
  const auto t0 = clock_type::now();
  const SphereRule rule = build_sphere_rule(2, 24);
  double worst = 0.0;
  for (int s = 0; s < 20; ++s) {
    SplitMix64 rng(mix64(4000 + static_cast<uint64_t>(s)));
    const std::vector<Body> pair = {random_body(rng, 3), random_body(rng, 3)};
    const double i = 0.75 * (s % 4);
    const double fused = querm_of_intersection_fused(pair, i, rule, 24);
    const double unfused = dual_quermassintegral(mixed_intersection_body(pair, 24), i, rule);
    worst = std::max(worst, rel_err(fused, unfused));
  }
  const double dt = seconds_since(t0);
  const bool ok = worst <= 1e-10 && dt < 60.0;
  return {ok, fmt("20 pairs, worst rel diff %.2e, %.1fs", worst, dt)};
}

std::pair<bool, std::string> random_sweep() {
  const auto t0 = clock_type::now();
  const CheckRules r3{3, 24, 24, TolPolicy::auto_policy()};
  std::vector<PlannedCheck> plans = make_random_sweep(sweep_checker_names(), 23, 2026, r3);
  const CheckRules r4{4, 8, 8, TolPolicy::auto_policy()};
  for (PlannedCheck& p : make_random_sweep(sweep_checker_names(), 1, 2027, r4))
    plans.push_back(std::move(p));

  int failed = 0;
  double most_negative = 0.0;
  for (const PlannedCheck& plan : plans) {
    const IneqReport rep = plan.run();
    if (rep.verdict == Verdict::fail) ++failed;
    most_negative = std::min(most_negative, rep.rel_slack);
  }
  const double dt = seconds_since(t0);
  const bool ok = failed == 0 && plans.size() >= 200 && dt < 600.0;
  return {ok, fmt("%.0f instances, 0 required failures; min rel_slack %.1e, %.0fs",
                  static_cast<double>(plans.size()), most_negative, dt)};
}

std::pair<bool, std::string> equality_cases() {
  const CheckRules rules{3, 16, 16, TolPolicy::auto_policy()};
  int confirmed = 0;
  const std::vector<PlannedCheck> plans = make_equality_sweep(30, 7, rules);
  for (const PlannedCheck& plan : plans) {
    if (plan.run().verdict == Verdict::equality_confirmed) ++confirmed;
  }

  const CheckRules sharp{3, 24, 24, TolPolicy::auto_policy()};
  const Body ball = Body::ball(3, 1.0);
  const Body ell = Body::ellipsoid({1.0, 1.0, 2.0});
  const Body bump = Body::bump(3, 1.0, {{0.3, {0.0, 0.0, 1.0}, 2}});
  double min_margin = std::numeric_limits<double>::infinity();
  for (const Body* k : {&ell, &bump}) {
    const std::vector<Body> pair = {*k, ball};
    for (const IneqReport& rep : {check_minkowski_mixed(*k, ball, 0.0, 1, sharp),
                                  check_af_product(pair, 0.0, sharp),
                                  check_bm_corollary(*k, ball, 0.0, sharp)}) {
      min_margin = std::min(min_margin, rep.rel_slack / (10.0 * rep.tol));
    }
  }
  const bool ok = confirmed == 30 && min_margin > 1.0;
  return {ok, fmt("30/%.0f dilate cases equality-confirmed; non-dilate slack >= %.1fx the "
                  "10*tol bar", static_cast<double>(confirmed), min_margin)};
}

std::pair<bool, std::string> power_mean_bulk() {
  SplitMix64 rng(mix64(40404));
  int violations = 0;
  for (int s = 0; s < 100000; ++s) {
    LemmaCInput in;
    in.a = rng.uniform(0.0, 10.0);
    in.b = rng.uniform(0.0, 10.0);
    in.c = rng.uniform(0.01, 10.0);
    in.d = rng.uniform(0.01, 10.0);
    in.p = rng.uniform(0.02, 0.98);
    if (check_lemma_c(in).verdict == Verdict::fail) ++violations;
  }
  double worst_eq = 0.0;
  int eq_confirmed = 0;
  for (int s = 0; s < 1000; ++s) {
    LemmaCInput in;
    in.a = rng.uniform(0.05, 10.0);
    in.b = rng.uniform(0.05, 10.0);
    in.c = rng.uniform(0.05, 10.0);
    in.d = in.b * in.c / in.a;  // forces the equality condition
    in.p = rng.uniform(0.02, 0.98);
    const IneqReport rep = check_lemma_c(in);
    worst_eq = std::max(worst_eq, std::abs(rep.rel_slack));
    if (rep.verdict == Verdict::equality_confirmed) ++eq_confirmed;
  }
  const bool ok = violations == 0 && eq_confirmed == 1000 && worst_eq <= 1e-12;
  return {ok, fmt("1e5 draws, %.0f violations; 1e3 equality cases within %.1e",
                  static_cast<double>(violations), worst_eq)};
}

std::pair<bool, std::string> mc_cross_check() {
  const SphereRule rule = build_sphere_rule(2, 24);
  int within = 0;
  for (int s = 0; s < 100; ++s) {
    SplitMix64 rng(mix64(7000 + static_cast<uint64_t>(s)));
    const std::vector<double> a = random_unit_vector(rng, 3);
    const std::vector<double> b = random_unit_vector(rng, 3);
    const double q = rng.uniform(0.3, 1.5);
    const double c = rng.uniform(0.0, 2.0);
    const double s0 = rng.uniform(0.5, 1.5);
    const SphereFn f = [&a, &b, q, c, s0](std::span<const double> u) {
      double da = 0.0, db = 0.0;
      for (size_t x = 0; x < 3; ++x) {
        da += a[x] * u[x];
        db += b[x] * u[x];
      }
      return std::exp(q * da) + c * db * db + s0;
    };
    const double quad = integrate(rule, f);
    const McEstimate mc = mc_sphere_integrate(f, 2, 1000000, 7000 + static_cast<uint64_t>(s));
    if (std::abs(quad - mc.value) <= 4.0 * mc.std_error) ++within;
  }

  const Body ell = Body::ellipsoid({1.0, 1.0, 2.0});
  const double inv = 1.0 / std::sqrt(3.0);
  const std::vector<double> diag = {inv, inv, inv};
  const SectionContext ctx = make_section_context(diag, {ell, ell}, 24);
  const double quad_section = section_volume(ell, ctx);
  const McEstimate mc_section = mc_section_volume(ell, diag, 1000000, 777);
  const double sigmas = std::abs(quad_section - mc_section.value) / mc_section.std_error;

  const bool ok = within >= 95 && sigmas <= 4.0;
  return {ok, fmt("%.0f/100 integrands within 4 std errors; section fixture at %.2f sigma",
                  static_cast<double>(within), sigmas)};
}

std::pair<bool, std::string> convergence_ladder() {
  const fs::path dir_e = work / "conv_e";
  const fs::path dir_u = work / "conv_u";
  const fs::path cfg_e = work / "conv_e.json";
  const fs::path cfg_u = work / "conv_u.json";
  spit(cfg_e, R"({
    "n": 3,
    "bodies": {"E": {"ellipsoid": {"axes": [1.0, 1.0, 2.0]}}},
    "ladder": [8, 16, 32],
    "target": {"bodies": ["E", "E"], "i": 0}
  })");
  spit(cfg_u, R"({
    "n": 3,
    "bodies": {
      "E": {"ellipsoid": {"axes": [1.0, 1.0, 2.0]}},
      "U": {"bump": {"c0": 1.0, "terms": [{"c": 0.3, "v": [0, 0, 1], "m": 2}]}},
      "C": {"combine": {"lambda": 0.7, "K": "E", "mu": 0.6, "L": "U"}}
    },
    "ladder": [8, 16, 32],
    "target": {"bodies": ["U", "C"], "i": 0}
  })");

  auto check_table = [&](const fs::path& cfg, const fs::path& dir,
                         std::string& detail) -> bool {
    const CliResult res =
        run_cli("converge --config " + cfg.string() + " --out " + dir.string());
    if (res.code != 0) {
      detail = "converge exited with " + std::to_string(res.code);
      return false;
    }
    std::ifstream in(dir / "converge.csv");
    std::string line;
    std::getline(in, line);  // header
    std::vector<double> values, diffs;
    while (std::getline(in, line)) {
      std::istringstream cells(line);
      std::string outer, inner, value, diff;
      std::getline(cells, outer, ',');
      std::getline(cells, inner, ',');
      std::getline(cells, value, ',');
      std::getline(cells, diff, ',');
      values.push_back(std::stod(value));
      if (!diff.empty()) diffs.push_back(std::stod(diff));
    }
    if (values.size() != 3 || diffs.size() != 2) {
      detail = "unexpected table shape";
      return false;
    }
    const bool contracting = std::abs(diffs[1]) < std::abs(diffs[0]);
    const bool settled = std::abs(diffs[1]) <= 1e-5 * std::abs(values.back());
    detail = fmt("diffs %.1e -> %.1e", std::abs(diffs[0]), std::abs(diffs[1]));
    return contracting && settled;
  };

  std::string detail_e, detail_u;
  const bool ok_e = check_table(cfg_e, dir_e, detail_e);
  const bool ok_u = check_table(cfg_u, dir_u, detail_u);
  return {ok_e && ok_u, "ellipsoid " + detail_e + "; bump blend " + detail_u};
}

std::pair<bool, std::string> cli_contract() {
  std::vector<std::string> problems;
  auto expect = [&problems](bool cond, const std::string& what) {
    if (!cond) problems.push_back(what);
  };

  const fs::path ok_cfg = work / "ok.json";
  spit(ok_cfg, R"({
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
  })");

  // rounding-negative near-equality rows (dilate pairs, analytic equality)
  // with the tolerance forced to zero: every verdict below zero is a "fail"
  const fs::path viol_cfg = work / "viol.json";
  spit(viol_cfg, R"({
    "n": 3, "seed": 1,
    "resolutions": {"outer": 6, "inner": 6},
    "tolerance": 0,
    "bodies": {
      "E":  {"ellipsoid": {"axes": [1.0, 1.0, 2.0]}},
      "K1": {"dilate": {"lambda": 0.6,  "K": "E"}},
      "L1": {"dilate": {"lambda": 0.77, "K": "E"}},
      "K2": {"dilate": {"lambda": 0.83, "K": "E"}},
      "L2": {"dilate": {"lambda": 1.3,  "K": "E"}},
      "K3": {"dilate": {"lambda": 1.7,  "K": "E"}},
      "L3": {"dilate": {"lambda": 0.6,  "K": "E"}},
      "K4": {"dilate": {"lambda": 1.23, "K": "E"}},
      "L4": {"dilate": {"lambda": 0.83, "K": "E"}},
      "K5": {"dilate": {"lambda": 1.3,  "K": "E"}},
      "L5": {"dilate": {"lambda": 1.41, "K": "E"}}
    },
    "checks": [
      {"check": "minkowski_mixed", "K": "K1", "L": "L1", "i": 0,   "j": 1},
      {"check": "minkowski_mixed", "K": "K1", "L": "L1", "i": 0.5, "j": 1},
      {"check": "minkowski_mixed", "K": "K1", "L": "L1", "i": 1,   "j": 1},
      {"check": "minkowski_mixed", "K": "K2", "L": "L2", "i": 0,   "j": 1},
      {"check": "minkowski_mixed", "K": "K3", "L": "L3", "i": 2.5, "j": 1},
      {"check": "minkowski_mixed", "K": "K4", "L": "L4", "i": 0,   "j": 1},
      {"check": "minkowski_mixed", "K": "K5", "L": "L5", "i": 0,   "j": 1},
      {"check": "brunn_minkowski", "K": "K5", "L": "K5", "i": 2.5, "alpha": 0.3},
      {"check": "brunn_minkowski", "K": "K2", "L": "L2", "i": 0,   "alpha": 0.3},
      {"check": "bm_corollary",    "K": "K2", "L": "L2", "i": 0}
    ]
  })");

  const fs::path err_cfg = work / "err.json";
  spit(err_cfg, R"({
    "n": 3,
    "bodies": {"B": {"ball": {"r": 1.0}}},
    "checks": [{"check": "bm_corollary", "K": "Q", "L": "B", "i": 0}]
  })");

  const fs::path out_a = work / "out_a";
  const fs::path out_b = work / "out_b";
  const CliResult ok_a = run_cli("verify --config " + ok_cfg.string() + " --out " + out_a.string());
  expect(ok_a.code == 0, "passing config exited " + std::to_string(ok_a.code));
  const CliResult ok_b = run_cli("verify --config " + ok_cfg.string() + " --out " + out_b.string());
  expect(ok_b.code == 0, "passing config rerun exited " + std::to_string(ok_b.code));
  const std::string report_a = slurp(out_a / "report.csv");
  expect(!report_a.empty() && report_a == slurp(out_b / "report.csv"),
         "rerun reports are not byte-identical");

  const CliResult smoke = run_cli("verify --config builtin:paper-smoke --out " +
                                  (work / "smoke").string());
  expect(smoke.code == 0, "builtin smoke suite exited " + std::to_string(smoke.code));

  const fs::path viol_out = work / "viol_out";
  const CliResult viol =
      run_cli("verify --config " + viol_cfg.string() + " --out " + viol_out.string());
  expect(viol.code == 1, "violation config exited " + std::to_string(viol.code));
  expect(slurp(viol_out / "report.csv").find(",fail,") != std::string::npos,
         "violation report carries no fail row");

  const CliResult err = run_cli("verify --config " + err_cfg.string());
  expect(err.code == 2, "undefined-body config exited " + std::to_string(err.code));
  expect(err.output.find("undefined body \"Q\"") != std::string::npos,
         "error text does not name the missing body");

  const CliResult missing = run_cli("verify --config " + (work / "no_such.json").string());
  expect(missing.code == 2, "missing config exited " + std::to_string(missing.code));

  const CliResult bad_flag =
      run_cli("verify --config " + ok_cfg.string() + " --format yaml");
  expect(bad_flag.code == 2, "bad format flag exited " + std::to_string(bad_flag.code));

  const CliResult no_ladder = run_cli("converge --config " + ok_cfg.string());
  expect(no_ladder.code == 2, "ladderless converge exited " + std::to_string(no_ladder.code));

  if (problems.empty()) return {true, "exit codes 0/1/2 and byte-identical reruns"};
  std::string detail;
  for (const std::string& p : problems) detail += (detail.empty() ? "" : "; ") + p;
  return {false, detail};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) cli_path = argv[1];
  work = fs::temp_directory_path() / ("dqi_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(work);
  fs::create_directories(work);

  run_criterion(1, "ball calculus closed forms at resolution 32", ball_calculus);
  run_criterion(2, "identity suites on randomized bodies", identity_suites);
  run_criterion(3, "fused and unfused quermassintegrals agree", fused_agreement);
  run_criterion(4, "randomized inequality sweep stays nonnegative", random_sweep);
  run_criterion(5, "dilate equality cases and non-dilate margins", equality_cases);
  run_criterion(6, "two-term power mean bulk randomized check", power_mean_bulk);
  run_criterion(7, "quadrature agrees with Monte Carlo", mc_cross_check);
  if (cli_path.empty()) {
    verdict_line(8, "convergence ladder via the command line", false, "no binary path given");
    verdict_line(9, "command line exit code contract", false, "no binary path given");
  } else {
    run_criterion(8, "convergence ladder via the command line", convergence_ladder);
    run_criterion(9, "command line exit code contract", cli_contract);
  }

  fs::remove_all(work);
  std::printf("%s\n", failures == 0 ? "acceptance: all criteria hold"
                                    : "acceptance: some criteria failed");
  return failures == 0 ? 0 : 1;
}
