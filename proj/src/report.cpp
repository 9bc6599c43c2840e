#include "prover/report.hpp"

#include <cmath>
#include <stdexcept>

namespace prover {

const char* const kReportHeader = "strategy\tsolved\tgain_pct\tplus\tminus";

DeltaReport report_delta(const std::vector<RunResult>& baseline,
                         const std::vector<RunResult>& current) {
  std::set<std::string> base_problems, cur_problems;
  for (const RunResult& r : baseline) base_problems.insert(r.problem);
  for (const RunResult& r : current) cur_problems.insert(r.problem);
  if (base_problems != cur_problems)
    throw std::invalid_argument("report_delta: result sets cover different corpora");

  std::set<std::string> base_solved = solved_problems(baseline);
  std::set<std::string> cur_solved = solved_problems(current);

  DeltaReport d;
  d.solved = cur_solved.size();
  d.baseline_solved = base_solved.size();
  for (const std::string& p : cur_solved)
    if (!base_solved.count(p)) d.plus++;
  for (const std::string& p : base_solved)
    if (!cur_solved.count(p)) d.minus++;
  d.gain_pct = d.baseline_solved == 0
                   ? 0.0
                   : 100.0 *
                         (static_cast<double>(d.solved) - static_cast<double>(d.baseline_solved)) /
                         static_cast<double>(d.baseline_solved);
  return d;
}

std::string format_gain_pct(double gain_pct) {
  // One decimal, floored toward zero: +70.073 displays as +70.0.
  double truncated = std::trunc(gain_pct * 10.0) / 10.0;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%+.1f", truncated);
  return buf;
}

std::string format_report_row(const std::string& strategy, const DeltaReport& d) {
  return strategy + "\t" + std::to_string(d.solved) + "\t" + format_gain_pct(d.gain_pct) + "\t+" +
         std::to_string(d.plus) + "\t-" + std::to_string(d.minus);
}

}  // namespace prover
