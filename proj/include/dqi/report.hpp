#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>

#include "dqi/inequalities.hpp"

namespace dqi {

/// Parameters attached to a report row; absent fields render as empty CSV
/// cells and JSON nulls.
struct RowParams {
  std::optional<double> i;
  std::optional<int> j;
  std::optional<int> r;
  std::optional<double> alpha;
};

struct ReportRow {
  IneqReport rep;
  RowParams params;
  int n = 0;
  uint64_t seed = 0;
};

/// Shortest-exact formatting for doubles; reports are byte-stable across
/// runs of the same binary.
std::string format_double(double v);

extern const char* const kReportCsvHeader;

void write_report_csv(std::ostream& os, std::span<const ReportRow> rows);
void write_report_json(std::ostream& os, std::span<const ReportRow> rows);

}  // namespace dqi
