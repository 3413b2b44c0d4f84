#include "dqi/suite.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <vector>

#include <json.hpp>

#include "dqi/dualvol.hpp"
#include "dqi/errors.hpp"
#include "dqi/intersect.hpp"
#include "dqi/quadrature.hpp"
#include "dqi/report.hpp"

namespace dqi {

namespace {

using json = nlohmann::ordered_json;

std::ofstream open_output(const SuiteConfig& cfg, const std::string& file) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  const fs::path path = fs::path(cfg.out_dir) / file;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write output file \"" + path.string() + "\"");
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Run metadata lives in its own file so the report itself is byte-stable
// for identical config + seed.
void write_meta(const SuiteConfig& cfg, const std::string& command, size_t rows) {
  json meta;
  meta["command"] = command;
  meta["generated_at"] = utc_timestamp();
  meta["n"] = cfg.n;
  meta["seed"] = cfg.seed;
  meta["outer_res"] = cfg.rules.outer_res;
  meta["inner_res"] = cfg.rules.inner_res;
  meta["rows"] = rows;
  auto out = open_output(cfg, "meta.json");
  out << meta.dump(2) << "\n";
}

}  // namespace

int run_verify(const SuiteConfig& cfg, std::ostream& log) {
  std::vector<ReportRow> rows;
  rows.reserve(cfg.checks.size());
  int failures = 0;
  for (const PlannedCheck& plan : cfg.checks) {
    ReportRow row;
    row.rep = plan.run();
    row.params = plan.params;
    row.n = cfg.n;
    row.seed = cfg.seed;
    if (row.rep.verdict == Verdict::fail) ++failures;
    log << row.rep.name << ": " << to_string(row.rep.verdict)
        << " (rel_slack=" << format_double(row.rep.rel_slack)
        << ", tol=" << format_double(row.rep.tol) << ")\n";
    rows.push_back(std::move(row));
  }

  if (cfg.format == "json") {
    auto out = open_output(cfg, "report.json");
    write_report_json(out, rows);
  } else {
    auto out = open_output(cfg, "report.csv");
    write_report_csv(out, rows);
  }
  write_meta(cfg, "verify", rows.size());

  log << rows.size() << " checks, " << failures << " failed\n";
  return failures == 0 ? 0 : 1;
}

int run_converge(const SuiteConfig& cfg, std::ostream& log) {
  if (cfg.ladder.empty()) throw ConfigError("converge: config has no resolution ladder");
  if (!cfg.target) throw ConfigError("converge: config has no target");
  const LadderTarget& target = *cfg.target;

  struct Entry {
    int res;
    double value;
    double diff_prev;
  };
  std::vector<Entry> entries;
  for (const int res : cfg.ladder) {
    const SphereRule rule = build_sphere_rule(cfg.n - 1, res);
    const double value =
        target.fused ? querm_of_intersection_fused(target.bodies, target.i, rule, res)
                     : dual_quermassintegral(target.bodies.front(), target.i, rule);
    const double diff = entries.empty() ? 0.0 : value - entries.back().value;
    entries.push_back({res, value, diff});
    log << "res " << res << ": " << format_double(value);
    if (entries.size() > 1) log << " (diff " << format_double(diff) << ")";
    log << "\n";
  }

  if (cfg.format == "json") {
    json doc;
    doc["rows"] = json::array();
    for (size_t e = 0; e < entries.size(); ++e) {
      json row;
      row["outer_res"] = entries[e].res;
      row["inner_res"] = target.fused ? json(entries[e].res) : json(nullptr);
      row["value"] = entries[e].value;
      row["diff_prev"] = e == 0 ? json(nullptr) : json(entries[e].diff_prev);
      doc["rows"].push_back(std::move(row));
    }
    auto out = open_output(cfg, "converge.json");
    out << doc.dump(2) << "\n";
  } else {
    auto out = open_output(cfg, "converge.csv");
    out << "outer_res,inner_res,value,diff_prev\n";
    for (size_t e = 0; e < entries.size(); ++e) {
      out << entries[e].res << ",";
      if (target.fused) out << entries[e].res;
      out << "," << format_double(entries[e].value) << ",";
      if (e > 0) out << format_double(entries[e].diff_prev);
      out << "\n";
    }
  }
  write_meta(cfg, "converge", entries.size());
  return 0;
}

int run_search(const SuiteConfig& cfg, std::ostream& log) {
  if (!cfg.search) throw ConfigError("search: config has no search block");
  const SearchConfig& sc = *cfg.search;
  const SearchFamily family =
      make_search_family(sc.family_kind, sc.check, sc.i, sc.j, sc.alpha, cfg.rules);
  const SearchResult result = search_extremal(family.check, family.box, sc.budget, cfg.seed);

  if (cfg.format == "json") {
    json doc;
    doc["rows"] = json::array();
    for (const SearchTracePoint& pt : result.trace) {
      json row;
      row["eval"] = pt.eval;
      row["rel_slack"] = pt.rel_slack;
      row["best_so_far"] = pt.best_so_far;
      row["params"] = pt.params;
      doc["rows"].push_back(std::move(row));
    }
    doc["best_params"] = result.best_params;
    doc["best_rel_slack"] = result.best_rel_slack;
    doc["violation"] = result.violation;
    auto out = open_output(cfg, "trace.json");
    out << doc.dump(2) << "\n";
  } else {
    auto out = open_output(cfg, "trace.csv");
    out << "eval,rel_slack,best_so_far";
    for (size_t p = 0; p < family.box.size(); ++p) out << ",p" << p;
    out << "\n";
    for (const SearchTracePoint& pt : result.trace) {
      out << pt.eval << "," << format_double(pt.rel_slack) << ","
          << format_double(pt.best_so_far);
      for (const double v : pt.params) out << "," << format_double(v);
      out << "\n";
    }
  }
  write_meta(cfg, "search", result.trace.size());

  log << "evaluations: " << result.trace.size()
      << ", best rel_slack: " << format_double(result.best_rel_slack) << " at (";
  for (size_t p = 0; p < result.best_params.size(); ++p) {
    if (p) log << ", ";
    log << format_double(result.best_params[p]);
  }
  log << ")\n";
  if (result.violation) {
    log << "violation: rel_slack below -tol (tol=" << format_double(result.best_report.tol)
        << ")\n";
    return 1;
  }
  return 0;
}

}  // namespace dqi
