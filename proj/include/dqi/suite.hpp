#pragma once

#include <ostream>

#include "dqi/config.hpp"

namespace dqi {

/// Runs every configured check in order, writes report.{csv|json} plus a
/// meta.json sidecar (the only file carrying a timestamp) into cfg.out_dir,
/// and returns 0 when no verdict is "fail", 1 otherwise.
int run_verify(const SuiteConfig& cfg, std::ostream& log);

/// Evaluates the ladder target at every configured resolution and writes
/// converge.{csv|json} (value plus successive differences). Returns 0.
int run_converge(const SuiteConfig& cfg, std::ostream& log);

/// Runs the configured extremal search and writes trace.{csv|json}.
/// Returns 1 only when a genuine violation (rel_slack < -tol) was found.
int run_search(const SuiteConfig& cfg, std::ostream& log);

}  // namespace dqi
