#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "prover/clause.hpp"
#include "prover/symbols.hpp"

namespace prover {

/// String hash recurrence h_i = s_i + (h_{i-1} << 6) + (h_{i-1} << 16) - h_{i-1},
/// h_0 = 0, wrapping modulo 2^64.
uint64_t sdbm(std::string_view bytes);

struct HashSpec {
  uint32_t base = 1u << 15;

  uint32_t index_of(std::string_view key) const {
    return static_cast<uint32_t>(sdbm(key) % base);
  }
};

/// sdbm(key) mod spec.base.
inline uint32_t hash_index(std::string_view key, const HashSpec& spec) {
  return spec.index_of(key);
}

struct FeatureConfig {
  HashSpec hash;
  bool count_features_enabled = true;
  bool conjecture_embedding = true;

  static constexpr uint32_t kWalkLength = 3;

  uint32_t dimension() const {
    return conjecture_embedding ? 2 * hash.base : hash.base;
  }
};

/// Sparse vector with strictly ascending indices and positive values.
struct SparseVector {
  std::vector<std::pair<uint32_t, double>> entries;
  uint32_t dimension = 0;

  double get(uint32_t index) const;
  void add(uint32_t index, double value);  // keeps entries sorted, sums duplicates

  bool operator==(const SparseVector& o) const {
    return dimension == o.dimension && entries == o.entries;
  }
};

/// One key per downward path of exactly kWalkLength nodes through each
/// literal's sign-annotated term tree (root = predicate, `~`-prefixed when
/// negative; variables print as `*`; short paths padded with the terminal
/// marker). Multiset: repeated paths appear repeatedly.
std::vector<std::string> term_walk_features(const Clause& c, const SymbolTable& symbols);

/// Fixed numeric clause measures keyed C:len, C:pos, C:neg, C:depth, C:vars.
/// Zero-valued measures are omitted (a missing index means 0 downstream).
std::vector<std::pair<std::string, uint64_t>> count_features(const Clause& c);

/// Exact (unhashed) feature-count map of one clause under cfg's feature set.
std::map<std::string, uint64_t> feature_counts(const Clause& c, const SymbolTable& symbols,
                                               const FeatureConfig& cfg);

/// Hashed feature block of one clause: indices in [0, base), collisions summed.
SparseVector clause_block(const Clause& c, const SymbolTable& symbols, const FeatureConfig& cfg);

/// Full clause vector. First block: features of c. Second block (when
/// conjecture_embedding): features of the union of the negated-conjecture
/// clauses, shifted by base.
SparseVector clause_vector(const Clause& c, std::span<const Clause> conjecture,
                           const SymbolTable& symbols, const FeatureConfig& cfg);

/// Per-problem extractor: computes the conjecture block once and reuses it
/// for every clause of the search. Read-only after construction.
class FeatureExtractor {
public:
  FeatureExtractor(std::span<const Clause> conjecture, const SymbolTable& symbols,
                   const FeatureConfig& cfg);

  SparseVector vectorize(const Clause& c) const;
  const FeatureConfig& config() const { return cfg_; }

private:
  const SymbolTable& symbols_;
  FeatureConfig cfg_;
  std::vector<std::pair<uint32_t, double>> conjecture_entries_;  // already shifted
};

}  // namespace prover
