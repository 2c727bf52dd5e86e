#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"
#include "suites.hpp"

namespace hml::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitUsage = 64;

std::string tool_version();

/// 0 when every suite passed, 2 when the worst verdict is inconclusive,
/// 1 when any failed.
int exit_status(const std::vector<SuiteOutcome>& outcomes);

/// Summary table as written to summary.txt.
std::string summary_text(const RunConfig& cfg, const std::vector<SuiteOutcome>& outcomes);
std::string report_json(const RunConfig& cfg, const SuiteOutcome& outcome);
std::string data_csv(const RunConfig& cfg, const SuiteOutcome& outcome);

/// Runs cfg.suites in order and writes summary.txt, report-<suite>.json and
/// data-<suite>.csv into cfg.output.  Refuses (status 1) when the memory
/// estimate exceeds the limit; any exception during a suite also yields 1.
/// `cfg` must already be effective.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace hml::cli
