#pragma once

// Independent test oracles. Everything here is deliberately implemented from
// first principles (grounding + truth tables, explicit path enumeration,
// exhaustive split search) so the library under test is checked against a
// second, unrelated route.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "prover/clause.hpp"
#include "prover/gbt.hpp"
#include "prover/symbols.hpp"
#include "prover/tptp.hpp"

namespace oracle {

// --- grounding + truth-table semantics (function-free problems) ---

// True iff the clause set has no Herbrand model over its constants.
bool unsat_by_truth_table(const std::vector<prover::Clause>& clauses,
                          const prover::SymbolTable& symbols);

// True iff every model of `inputs` satisfies every ground instance of `c`.
bool entails(const std::vector<prover::Clause>& inputs, const prover::Clause& c,
             const prover::SymbolTable& symbols);

// --- independent sdbm (multiplicative form: h = h * 65599 + byte) ---
uint64_t sdbm_reference(const std::string& bytes);

// --- brute-force term-walk path enumeration ---

// Exact feature-count map of the clause: every root-anchored downward path of
// exactly 3 node labels (padded with the terminal marker), plus the count
// features when requested. Built by explicit tree construction.
std::map<std::string, uint64_t> walk_counts_brute(const prover::Clause& c,
                                                  const prover::SymbolTable& symbols,
                                                  bool with_count_features);

// Number of depth-3 downward paths (including padded ones) across the
// clause's literal trees.
uint64_t walk_path_count_brute(const prover::Clause& c);

// --- brute-force split search ---

struct BruteSplit {
  bool found = false;
  double gain = 0.0;
  uint32_t feature = 0;
  double threshold = 0.0;
};

// Enumerates every (feature, midpoint threshold) candidate over dense views
// of the examples and returns the best by gain, ties to lowest feature then
// lowest threshold. Gradients/hessians are the logistic ones at margin 0.
BruteSplit best_split_brute(const std::vector<prover::Example>& data, uint32_t dimension,
                            double lambda, double gamma, uint32_t min_leaf);

// --- structural comparison ---

// True iff some literal permutation plus a bijective variable renaming maps
// a onto b exactly (alphabetic variants).
bool is_variant(const prover::Clause& a, const prover::Clause& b);

// --- random structure generators (seeded, deterministic) ---

struct RandomSignature {
  std::vector<prover::SymbolId> predicates;
  std::vector<prover::SymbolId> constants;
  std::vector<prover::SymbolId> functions;  // arity >= 1
};

// Interns a small shared signature into `symbols`.
RandomSignature make_signature(prover::SymbolTable& symbols, bool with_functions);

prover::Term random_term(std::mt19937& rng, const RandomSignature& sig,
                         const prover::SymbolTable& symbols, int max_depth, int num_vars);
prover::Clause random_clause(std::mt19937& rng, const RandomSignature& sig,
                             const prover::SymbolTable& symbols, int max_literals,
                             int max_depth, int num_vars);

// Function-free random problem (3..8 clauses over <= 3 constants); last
// clause gets the negated_conjecture role.
prover::Problem random_ground_problem(std::mt19937& rng);

prover::SparseVector random_sparse_vector(std::mt19937& rng, uint32_t dimension, int max_nnz);

}  // namespace oracle
