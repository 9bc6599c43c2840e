#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "prover/corpus.hpp"
#include "prover/gbt.hpp"
#include "prover/report.hpp"

namespace prover {

/// Builds one training-data file from every successful trace referenced by
/// the given run results, vectors built under cfg. Lines that are exact
/// (vector, label) duplicates are emitted once. Throws if no trace yields
/// any example. Returns the number of lines written.
size_t accumulate_training(const std::vector<const std::vector<RunResult>*>& runs,
                           const FeatureConfig& cfg,
                           const std::filesystem::path& out_data,
                           double negative_sample = 1.0);

struct LoopConfig {
  std::filesystem::path corpus_dir;
  std::filesystem::path workdir;
  Strategy base_strategy;
  uint32_t iterations = 1;
  Limits limits;
  TrainParams train_params;
  FeatureConfig features;
  unsigned jobs = 1;
  bool pure_solo = false;  // test-only unfair solo mode
};

struct IterationRecord {
  uint32_t index = 0;
  std::filesystem::path model_path;
  std::vector<RunResult> solo_runs;
  std::vector<RunResult> combined_runs;
  DeltaReport solo_delta;
  DeltaReport combined_delta;
  std::set<std::string> cumulative_solved;
};

struct LoopOutcome {
  std::vector<RunResult> base_runs;
  std::vector<IterationRecord> iterations;
};

/// Base sweep, then per iteration: accumulate training data from every prior
/// successful trace, train the next model, evaluate the solo and combined
/// compositions, and report against the base sweep. All artifacts persist
/// under the workdir; completed stages are skipped on re-run (resume).
LoopOutcome run_loop(const LoopConfig& cfg);

}  // namespace prover
