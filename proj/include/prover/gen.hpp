#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace prover {

/// One generated problem: TPTP CNF text plus a descriptive stem.
struct GeneratedProblem {
  std::string name;
  std::string text;
};

/// Deterministic desk-scale corpus: implication-chain problems with
/// distractor edges, random 3-CNF near the sat threshold, and pigeonhole
/// instances, all over a shared symbol vocabulary.
std::vector<GeneratedProblem> generate_corpus(size_t count, uint64_t seed);

/// Writes each problem to dir/<name>.p. Returns the number written.
size_t write_corpus(const std::filesystem::path& dir, size_t count, uint64_t seed);

}  // namespace prover
