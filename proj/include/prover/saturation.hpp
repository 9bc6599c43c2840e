#pragma once

#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "prover/strategy.hpp"
#include "prover/tptp.hpp"

namespace prover {

enum class Verdict : uint8_t { Unsatisfiable, Saturated, ResourceOut };
const char* verdict_name(Verdict v);

struct InferenceRecord {
  enum class Rule : uint8_t { Input, Resolution, Factoring };
  Rule rule = Rule::Input;
  std::vector<ClauseId> parents;  // 0 for input, 2 for resolution, 1 for factoring
};

const char* rule_name(InferenceRecord::Rule r);

/// One clause the search kept: its derivation and whether it was ever
/// selected as given (processed). Entry index == clause id.
struct TraceEntry {
  ClauseId id = 0;
  Clause clause;
  Role role = Role::Axiom;  // input role; Axiom serves as filler for derived
  InferenceRecord record;
  bool was_processed = false;
};

struct ProofTrace {
  std::string problem;
  std::vector<TraceEntry> entries;

  std::vector<Clause> conjecture_clauses() const;
};

struct Limits {
  double wall_seconds = 0.0;     // 0 = unlimited
  uint64_t max_processed = 0;    // 0 = unlimited
  uint64_t max_generated = 0;    // 0 = unlimited
};

struct SearchStats {
  uint64_t given_count = 0;
  uint64_t generated_count = 0;
  double wall_seconds = 0.0;
  std::vector<uint64_t> queue_picks;  // parallel to the strategy's queues
};

struct SearchResult {
  Verdict verdict = Verdict::Saturated;
  std::optional<std::set<ClauseId>> proof;  // present iff Unsatisfiable
  ProofTrace trace;
  SearchStats stats;
};

/// Given-clause saturation over p with binary resolution and factoring.
/// Newly generated clauses pass the forward-simplification gate before
/// entering U; the empty-clause check happens on generation.
SearchResult saturate(const Problem& p, const Strategy& s, const Limits& limits,
                      bool allow_unfair_strategy = false);

/// Binary resolvents of g and p. Inputs must be renamed apart; one clause per
/// opposite-polarity literal pair whose atoms unify.
std::vector<Clause> resolvents(const Clause& g, const Clause& p);

/// Factors of g: for each unordered same-polarity literal pair whose atoms
/// unify, the instantiated clause with the duplicate occurrence merged.
std::vector<Clause> factors(const Clause& g);

/// keep unless c is a tautology or some processed clause subsumes it.
bool forward_keep(const Clause& c, const std::vector<const Clause*>& processed);

/// Ancestor closure of empty_id under the trace's derivation records
/// (inclusive). Throws if empty_id is not in the trace.
std::set<ClauseId> extract_proof(const ProofTrace& trace, ClauseId empty_id);

struct TrainingExample {
  Clause clause;
  std::vector<Clause> conjecture_context;
  bool positive = false;
  std::string problem;
};

struct LabeledExamples {
  std::vector<TrainingExample> positives;
  std::vector<TrainingExample> negatives;
};

/// positives = processed clauses inside proof_ids, negatives = processed
/// clauses outside; unprocessed clauses yield nothing.
LabeledExamples label_examples(const ProofTrace& trace, const std::set<ClauseId>& proof_ids);

/// Trace dump: one tab-separated line per clause
/// `id role rule parent_ids(comma) processed_flag clause_text`,
/// final line `SZS status ...`.
void write_trace(std::ostream& out, const SearchResult& result, const SymbolTable& symbols);

struct LoadedTrace {
  ProofTrace trace;
  Verdict verdict = Verdict::Saturated;
  SymbolTable symbols;
};

LoadedTrace read_trace(std::istream& in, const std::string& problem_name);
LoadedTrace read_trace_file(const std::filesystem::path& path);

}  // namespace prover
