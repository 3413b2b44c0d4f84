#include "dqi/report.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace dqi {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char* const kReportCsvHeader =
    "check_name,paper_ref,n,i,j,r,alpha,lhs,rhs,slack,rel_slack,tol,"
    "equality_expected,verdict,outer_res,inner_res,seed";

namespace {

std::string opt_cell(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::string opt_cell(const std::optional<int>& v) {
  return v ? std::to_string(*v) : std::string();
}

}  // namespace

void write_report_csv(std::ostream& os, std::span<const ReportRow> rows) {
  os << kReportCsvHeader << "\n";
  for (const ReportRow& row : rows) {
    os << row.rep.name << ',' << row.rep.ref << ',' << row.n << ',' << opt_cell(row.params.i)
       << ',' << opt_cell(row.params.j) << ',' << opt_cell(row.params.r) << ','
       << opt_cell(row.params.alpha) << ',' << format_double(row.rep.lhs) << ','
       << format_double(row.rep.rhs) << ',' << format_double(row.rep.slack) << ','
       << format_double(row.rep.rel_slack) << ',' << format_double(row.rep.tol) << ','
       << (row.rep.equality_expected ? "true" : "false") << ',' << to_string(row.rep.verdict)
       << ',' << row.rep.outer_res << ',' << row.rep.inner_res << ',' << row.seed << "\n";
  }
}

void write_report_json(std::ostream& os, std::span<const ReportRow> rows) {
  nlohmann::ordered_json doc;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const ReportRow& row : rows) {
    nlohmann::ordered_json r;
    r["check_name"] = row.rep.name;
    r["paper_ref"] = row.rep.ref;
    r["n"] = row.n;
    r["i"] = row.params.i ? nlohmann::ordered_json(*row.params.i) : nullptr;
    r["j"] = row.params.j ? nlohmann::ordered_json(*row.params.j) : nullptr;
    r["r"] = row.params.r ? nlohmann::ordered_json(*row.params.r) : nullptr;
    r["alpha"] = row.params.alpha ? nlohmann::ordered_json(*row.params.alpha) : nullptr;
    r["lhs"] = row.rep.lhs;
    r["rhs"] = row.rep.rhs;
    r["slack"] = row.rep.slack;
    r["rel_slack"] = row.rep.rel_slack;
    r["tol"] = row.rep.tol;
    r["equality_expected"] = row.rep.equality_expected;
    r["verdict"] = to_string(row.rep.verdict);
    r["outer_res"] = row.rep.outer_res;
    r["inner_res"] = row.rep.inner_res;
    r["seed"] = row.seed;
    if (!row.rep.notes.empty()) {
      nlohmann::ordered_json notes;
      for (const auto& [key, value] : row.rep.notes) notes[key] = value;
      r["notes"] = notes;
    }
    doc["rows"].push_back(std::move(r));
  }
  os << doc.dump(2) << "\n";
}

}  // namespace dqi
