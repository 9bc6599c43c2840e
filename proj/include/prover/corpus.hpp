#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "prover/saturation.hpp"

namespace prover {

/// A problem set: every regular file under root with a .p or .cnf extension,
/// in lexicographic order.
struct Corpus {
  std::filesystem::path root;
  std::vector<std::filesystem::path> problems;
  std::string name;

  static Corpus scan(const std::filesystem::path& root);
};

struct RunResult {
  enum class Outcome : uint8_t { Unsatisfiable, Saturated, ResourceOut, Error };

  std::string problem;
  Outcome verdict = Outcome::Error;
  double wall_time = 0.0;
  uint64_t given_count = 0;
  std::string trace_path;  // non-empty iff Unsatisfiable
  std::string error;       // non-empty iff Error
};

const char* outcome_name(RunResult::Outcome o);
RunResult::Outcome outcome_from_name(const std::string& s);

/// Runs s on every problem with up to `jobs` concurrent searches. Traces of
/// solved problems are written to trace_dir (unless empty). Per-problem
/// failures become Error results, never a run abort. Result order follows
/// the corpus regardless of jobs.
std::vector<RunResult> run_corpus(const Corpus& corpus, const Strategy& s,
                                  const Limits& limits, unsigned jobs,
                                  const std::filesystem::path& trace_dir);

std::set<std::string> solved_problems(const std::vector<RunResult>& results);

/// Tab-separated persistence: header + one row per problem.
void write_results(const std::filesystem::path& path, const std::vector<RunResult>& results);
std::vector<RunResult> read_results(const std::filesystem::path& path);

}  // namespace prover
