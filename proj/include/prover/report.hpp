#pragma once

#include <string>
#include <vector>

#include "prover/corpus.hpp"

namespace prover {

/// Solved-count delta of a strategy against the baseline on one corpus.
/// Invariant: plus - minus == solved - baseline_solved.
struct DeltaReport {
  uint64_t solved = 0;
  uint64_t baseline_solved = 0;
  double gain_pct = 0.0;  // exact 100*(solved-baseline)/baseline
  uint64_t plus = 0;      // problems gained vs baseline
  uint64_t minus = 0;     // problems lost vs baseline
};

/// Both result lists must cover the same problem set.
DeltaReport report_delta(const std::vector<RunResult>& baseline,
                         const std::vector<RunResult>& current);

/// Percentage as displayed in reports: one decimal, floored toward zero
/// (matches the consistent benchmark-table column).
std::string format_gain_pct(double gain_pct);

/// `strategy solved gain_pct plus minus` row (tab-separated).
std::string format_report_row(const std::string& strategy, const DeltaReport& d);
extern const char* const kReportHeader;

}  // namespace prover
