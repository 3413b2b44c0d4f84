#include "dqi/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dqi/errors.hpp"
#include "dqi/intersect.hpp"

namespace dqi {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError("config: " + msg); }

const json& field(const json& obj, const char* key, const std::string& ctx) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(ctx + ": missing field \"" + key + "\"");
  return *it;
}

double num_value(const json& v, const std::string& ctx) {
  if (!v.is_number()) fail(ctx + ": expected a number");
  return v.get<double>();
}

double num_field(const json& obj, const char* key, const std::string& ctx) {
  return num_value(field(obj, key, ctx), ctx + "." + key);
}

double num_or(const json& obj, const char* key, double fallback, const std::string& ctx) {
  const auto it = obj.find(key);
  return it == obj.end() ? fallback : num_value(*it, ctx + "." + key);
}

int int_value(const json& v, const std::string& ctx) {
  if (!v.is_number_integer()) fail(ctx + ": expected an integer");
  return v.get<int>();
}

int int_field(const json& obj, const char* key, const std::string& ctx) {
  return int_value(field(obj, key, ctx), ctx + "." + key);
}

int int_or(const json& obj, const char* key, int fallback, const std::string& ctx) {
  const auto it = obj.find(key);
  return it == obj.end() ? fallback : int_value(*it, ctx + "." + key);
}

std::string str_value(const json& v, const std::string& ctx) {
  if (!v.is_string()) fail(ctx + ": expected a string");
  return v.get<std::string>();
}

std::string str_field(const json& obj, const char* key, const std::string& ctx) {
  return str_value(field(obj, key, ctx), ctx + "." + key);
}

std::vector<double> num_array(const json& v, const std::string& ctx) {
  if (!v.is_array()) fail(ctx + ": expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const json& e : v) out.push_back(num_value(e, ctx));
  return out;
}

using BodyMap = std::map<std::string, Body, std::less<>>;

const Body& lookup_body(const BodyMap& defined, const std::string& ref, const std::string& ctx) {
  const auto it = defined.find(ref);
  if (it == defined.end()) fail(ctx + ": undefined body \"" + ref + "\"");
  return it->second;
}

const Body& ref_field(const json& obj, const char* key, const BodyMap& defined,
                      const std::string& ctx) {
  return lookup_body(defined, str_field(obj, key, ctx), ctx);
}

std::vector<Body> ref_list(const json& v, const BodyMap& defined, const std::string& ctx) {
  if (!v.is_array()) fail(ctx + ": expected an array of body names");
  std::vector<Body> out;
  out.reserve(v.size());
  for (const json& e : v) out.push_back(lookup_body(defined, str_value(e, ctx), ctx));
  return out;
}

Body parse_body(const json& def, int n, int default_inner, const BodyMap& defined,
                const std::string& name) {
  const std::string ctx = "body \"" + name + "\"";
  if (!def.is_object() || def.size() != 1)
    fail(ctx + ": expected an object with exactly one body kind");
  const std::string kind = def.begin().key();
  const json& args = def.begin().value();
  if (!args.is_object()) fail(ctx + ": " + kind + " arguments must be an object");

  if (kind == "ball") return Body::ball(n, num_field(args, "r", ctx));
  if (kind == "ellipsoid") {
    std::vector<double> axes = num_array(field(args, "axes", ctx), ctx + ".axes");
    if (static_cast<int>(axes.size()) != n)
      fail(ctx + ": ellipsoid needs exactly " + std::to_string(n) + " axes");
    return Body::ellipsoid(std::move(axes));
  }
  if (kind == "lpball")
    return Body::lp_ball(n, num_field(args, "p", ctx), num_or(args, "s", 1.0, ctx));
  if (kind == "bump") {
    std::vector<BumpTerm> terms;
    const json& list = field(args, "terms", ctx);
    if (!list.is_array()) fail(ctx + ".terms: expected an array");
    for (const json& t : list) {
      BumpTerm term;
      term.c = num_field(t, "c", ctx + ".terms");
      term.v = num_array(field(t, "v", ctx + ".terms"), ctx + ".terms.v");
      term.m = int_field(t, "m", ctx + ".terms");
      terms.push_back(std::move(term));
    }
    return Body::bump(n, num_field(args, "c0", ctx), std::move(terms));
  }
  if (kind == "combine")
    return radial_combine(num_field(args, "lambda", ctx), ref_field(args, "K", defined, ctx),
                          num_field(args, "mu", ctx), ref_field(args, "L", defined, ctx));
  if (kind == "dilate")
    return dilate(num_field(args, "lambda", ctx), ref_field(args, "K", defined, ctx));
  if (kind == "intersection") {
    std::vector<Body> bodies = ref_list(field(args, "bodies", ctx), defined, ctx + ".bodies");
    const int inner = int_or(args, "inner_res", default_inner, ctx);
    return mixed_intersection_body(std::move(bodies), inner);
  }
  fail(ctx + ": unknown body kind \"" + kind + "\"");
}

PlannedCheck parse_check(const json& c, const BodyMap& defined, const CheckRules& rules,
                         size_t index) {
  const std::string ctx = "checks[" + std::to_string(index) + "]";
  if (!c.is_object()) fail(ctx + ": expected an object");
  const std::string name = str_field(c, "check", ctx);
  PlannedCheck plan;
  plan.name = name;

  if (name == "lemma_c") {
    LemmaCInput in;
    in.a = num_field(c, "a", ctx);
    in.b = num_field(c, "b", ctx);
    in.c = num_field(c, "c", ctx);
    in.d = num_field(c, "d", ctx);
    in.p = num_field(c, "p", ctx);
    plan.run = [in] { return check_lemma_c(in); };
    return plan;
  }
  if (name == "dual_af") {
    const std::vector<Body> bodies = ref_list(field(c, "bodies", ctx), defined, ctx + ".bodies");
    const int r = int_field(c, "r", ctx);
    plan.params.r = r;
    plan.run = [bodies, r, rules] { return check_dual_af_volumes(bodies, r, rules); };
    return plan;
  }
  if (name == "minkowski_mixed") {
    const Body k = ref_field(c, "K", defined, ctx), l = ref_field(c, "L", defined, ctx);
    const double i = num_or(c, "i", 0.0, ctx);
    const int j = int_or(c, "j", 1, ctx);
    plan.params.i = i;
    plan.params.j = j;
    plan.run = [k, l, i, j, rules] { return check_minkowski_mixed(k, l, i, j, rules); };
    return plan;
  }
  if (name == "querm_sum_minkowski") {
    const Body k = ref_field(c, "K", defined, ctx), l = ref_field(c, "L", defined, ctx);
    const Body d = ref_field(c, "D", defined, ctx);
    const double lambda_d = num_field(c, "lambda_d", ctx);
    const double i = num_or(c, "i", 0.0, ctx);
    const int j = int_or(c, "j", 1, ctx);
    plan.params.i = i;
    plan.params.j = j;
    plan.run = [k, l, d, lambda_d, i, j, rules] {
      return check_querm_sum_minkowski(k, l, d, lambda_d, i, j, rules);
    };
    return plan;
  }
  if (name == "af_intersection") {
    const std::vector<Body> bodies = ref_list(field(c, "bodies", ctx), defined, ctx + ".bodies");
    const double i = num_or(c, "i", 0.0, ctx);
    const int r = int_field(c, "r", ctx);
    plan.params.i = i;
    plan.params.r = r;
    plan.run = [bodies, i, r, rules] { return check_af_intersection(bodies, i, r, rules); };
    return plan;
  }
  if (name == "af_product") {
    const std::vector<Body> bodies = ref_list(field(c, "bodies", ctx), defined, ctx + ".bodies");
    const double i = num_or(c, "i", 0.0, ctx);
    plan.params.i = i;
    plan.run = [bodies, i, rules] { return check_af_product(bodies, i, rules); };
    return plan;
  }
  if (name == "af_hybrid") {
    const Body k = ref_field(c, "K", defined, ctx), l = ref_field(c, "L", defined, ctx);
    const double i = num_or(c, "i", 0.0, ctx);
    const int j = int_or(c, "j", 0, ctx);
    plan.params.i = i;
    plan.params.j = j;
    plan.run = [k, l, i, j, rules] { return check_af_hybrid(k, l, i, j, rules); };
    return plan;
  }
  if (name == "brunn_minkowski" || name == "strengthened_form") {
    const Body k = ref_field(c, "K", defined, ctx), l = ref_field(c, "L", defined, ctx);
    const double i = num_or(c, "i", 0.0, ctx);
    const double alpha = num_field(c, "alpha", ctx);
    plan.params.i = i;
    plan.params.alpha = alpha;
    if (name == "brunn_minkowski")
      plan.run = [k, l, i, alpha, rules] { return check_brunn_minkowski(k, l, i, alpha, rules); };
    else
      plan.run = [k, l, i, alpha, rules] {
        return check_strengthened_form(k, l, i, alpha, rules);
      };
    return plan;
  }
  if (name == "bm_corollary") {
    const Body k = ref_field(c, "K", defined, ctx), l = ref_field(c, "L", defined, ctx);
    const double i = num_or(c, "i", 0.0, ctx);
    plan.params.i = i;
    plan.params.alpha = 1.0;
    plan.run = [k, l, i, rules] { return check_bm_corollary(k, l, i, rules); };
    return plan;
  }
  fail(ctx + ": unknown checker \"" + name + "\"");
}

uint64_t seed_value(const json& v, const std::string& ctx) {
  if (v.is_number_unsigned()) return v.get<uint64_t>();
  if (v.is_number_integer() && v.get<int64_t>() >= 0)
    return static_cast<uint64_t>(v.get<int64_t>());
  fail(ctx + ": expected a nonnegative integer");
}

// Builtin suites, addressable as "builtin:<name>" instead of a file path.
const char* const kSmokeSuite = R"({
  "n": 3,
  "seed": 1,
  "resolutions": {"outer": 16, "inner": 16},
  "tolerance": "auto",
  "bodies": {
    "B": {"ball": {"r": 1.0}},
    "K": {"dilate": {"lambda": 1.5, "K": "B"}},
    "L": {"dilate": {"lambda": 0.75, "K": "B"}},
    "D": {"dilate": {"lambda": 1.25, "K": "B"}}
  },
  "checks": [
    {"check": "dual_af", "bodies": ["K", "L", "D"], "r": 2},
    {"check": "minkowski_mixed", "K": "K", "L": "L", "i": 0, "j": 1},
    {"check": "querm_sum_minkowski", "K": "K", "L": "L", "D": "D", "lambda_d": 0.5, "i": 0, "j": 1},
    {"check": "af_intersection", "bodies": ["K", "L"], "i": 0, "r": 2},
    {"check": "af_product", "bodies": ["K", "L"], "i": 0},
    {"check": "af_hybrid", "K": "K", "L": "L", "i": 0, "j": 0},
    {"check": "brunn_minkowski", "K": "K", "L": "L", "i": 0, "alpha": 0.5},
    {"check": "bm_corollary", "K": "K", "L": "L", "i": 0},
    {"check": "strengthened_form", "K": "K", "L": "L", "i": 0, "alpha": 0.25}
  ]
})";

const char* const kRandomSuite = R"({
  "n": 3,
  "seed": 42,
  "resolutions": {"outer": 12, "inner": 12},
  "tolerance": "auto",
  "sweep": {
    "checks": ["dual_af", "minkowski_mixed", "querm_sum_minkowski", "af_intersection",
               "af_product", "af_hybrid", "brunn_minkowski", "bm_corollary",
               "strengthened_form"],
    "tuples": 5
  }
})";

}  // namespace

SuiteConfig parse_suite_config(const std::string& json_text, const ConfigOverrides& ov) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) fail("top level must be an object");

  static const char* const known_keys[] = {"n",      "seed",   "resolutions", "tolerance",
                                           "bodies", "checks", "sweep",       "ladder",
                                           "target", "search", "output"};
  for (const auto& [key, value] : doc.items()) {
    bool known = false;
    for (const char* k : known_keys) known = known || key == k;
    if (!known) fail("unknown key \"" + key + "\"");
  }

  SuiteConfig cfg;
  cfg.n = int_or(doc, "n", 3, "config");
  if (cfg.n < 3) fail("n: dimension must be >= 3");
  if (doc.contains("seed")) cfg.seed = seed_value(doc["seed"], "config.seed");

  int outer = 24, inner = 24;
  if (doc.contains("resolutions")) {
    const json& res = doc["resolutions"];
    if (!res.is_object()) fail("resolutions: expected an object");
    outer = int_or(res, "outer", outer, "resolutions");
    inner = int_or(res, "inner", inner, "resolutions");
  }

  TolPolicy tol = TolPolicy::auto_policy();
  if (doc.contains("tolerance")) {
    const json& t = doc["tolerance"];
    if (t.is_string() && t.get<std::string>() == "auto")
      tol = TolPolicy::auto_policy();
    else if (t.is_number() && t.get<double>() >= 0.0)
      tol = TolPolicy::fixed_policy(t.get<double>());
    else
      fail("tolerance: expected \"auto\" or a nonnegative number");
  }

  if (doc.contains("output")) {
    const json& out = doc["output"];
    if (!out.is_object()) fail("output: expected an object");
    if (out.contains("dir")) cfg.out_dir = str_value(out["dir"], "output.dir");
    if (out.contains("format")) cfg.format = str_value(out["format"], "output.format");
  }

  // CLI flags win over the file; everything downstream (sweep generation,
  // check bindings) sees the final values.
  if (ov.seed) cfg.seed = *ov.seed;
  if (ov.outer_res) outer = *ov.outer_res;
  if (ov.inner_res) inner = *ov.inner_res;
  if (ov.out_dir) cfg.out_dir = *ov.out_dir;
  if (ov.format) cfg.format = *ov.format;

  if (outer < 4 || inner < 4) fail("resolutions: outer and inner must be >= 4");
  if (cfg.format != "csv" && cfg.format != "json")
    fail("output.format: expected \"csv\" or \"json\"");

  cfg.rules = CheckRules{cfg.n, outer, inner, tol};

  if (doc.contains("bodies")) {
    const json& bodies = doc["bodies"];
    if (!bodies.is_object()) fail("bodies: expected an object of named definitions");
    for (const auto& [name, def] : bodies.items()) {
      if (cfg.bodies.count(name)) fail("body \"" + name + "\" defined twice");
      cfg.bodies.emplace(name, parse_body(def, cfg.n, inner, cfg.bodies, name));
    }
  }

  if (doc.contains("checks")) {
    const json& checks = doc["checks"];
    if (!checks.is_array()) fail("checks: expected an array");
    for (size_t idx = 0; idx < checks.size(); ++idx)
      cfg.checks.push_back(parse_check(checks[idx], cfg.bodies, cfg.rules, idx));
  }

  if (doc.contains("sweep")) {
    const json& sweep = doc["sweep"];
    if (!sweep.is_object()) fail("sweep: expected an object");
    std::vector<std::string> names;
    if (sweep.contains("checks")) {
      const json& list = sweep["checks"];
      if (!list.is_array()) fail("sweep.checks: expected an array of checker names");
      for (const json& e : list) names.push_back(str_value(e, "sweep.checks"));
    } else {
      names = sweep_checker_names();
    }
    const int tuples = int_field(sweep, "tuples", "sweep");
    if (tuples < 1) fail("sweep.tuples: must be >= 1");
    for (PlannedCheck& plan : make_random_sweep(names, tuples, cfg.seed, cfg.rules))
      cfg.checks.push_back(std::move(plan));
  }

  if (doc.contains("ladder")) {
    const json& ladder = doc["ladder"];
    if (!ladder.is_array() || ladder.size() < 2)
      fail("ladder: expected at least two resolutions");
    for (const json& e : ladder) {
      const int r = int_value(e, "ladder");
      if (r < 4) fail("ladder: resolutions must be >= 4");
      if (!cfg.ladder.empty() && r <= cfg.ladder.back())
        fail("ladder: resolutions must increase");
      cfg.ladder.push_back(r);
    }
  }

  if (doc.contains("target")) {
    const json& target = doc["target"];
    if (!target.is_object()) fail("target: expected an object");
    LadderTarget t;
    t.i = num_or(target, "i", 0.0, "target");
    if (target.contains("bodies")) {
      t.bodies = ref_list(target["bodies"], cfg.bodies, "target.bodies");
      t.fused = true;
      if (static_cast<int>(t.bodies.size()) != cfg.n - 1)
        fail("target.bodies: fused target needs exactly " + std::to_string(cfg.n - 1) +
             " bodies");
    } else {
      t.bodies.push_back(ref_field(target, "body", cfg.bodies, "target"));
      t.fused = false;
    }
    cfg.target = std::move(t);
  }

  if (doc.contains("search")) {
    const json& search = doc["search"];
    if (!search.is_object()) fail("search: expected an object");
    SearchConfig s;
    s.check = str_field(search, "check", "search");
    const json& fam = field(search, "family", "search");
    if (!fam.is_object()) fail("search.family: expected an object");
    s.family_kind = str_field(fam, "kind", "search.family");
    if (search.contains("params")) {
      const json& p = search["params"];
      if (!p.is_object()) fail("search.params: expected an object");
      s.i = num_or(p, "i", 0.0, "search.params");
      s.j = int_or(p, "j", 1, "search.params");
      s.alpha = num_or(p, "alpha", 1.0, "search.params");
    }
    s.budget = int_or(search, "budget", 200, "search");
    if (s.budget < 1) fail("search.budget: must be >= 1");
    cfg.search = std::move(s);
  }

  return cfg;
}

SuiteConfig load_suite_config(const std::string& path_or_builtin, const ConfigOverrides& ov) {
  constexpr std::string_view prefix = "builtin:";
  if (path_or_builtin.rfind(prefix, 0) == 0) {
    const std::string name = path_or_builtin.substr(prefix.size());
    if (name == "paper-smoke") return parse_suite_config(kSmokeSuite, ov);
    if (name == "paper-random") return parse_suite_config(kRandomSuite, ov);
    fail("unknown builtin suite \"" + name + "\"");
  }
  std::ifstream in(path_or_builtin);
  if (!in) fail("cannot read config file \"" + path_or_builtin + "\"");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_suite_config(text.str(), ov);
}

}  // namespace dqi
