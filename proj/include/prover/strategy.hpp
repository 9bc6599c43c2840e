#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prover/gbt.hpp"

namespace prover {

/// Clause ordering heuristic. Orders ascending by weight; ties break by
/// lower age, then lower id.
struct WeightFunctionSpec {
  enum class Kind { SymbolCount, Age, ConjectureOverlap, Model };

  Kind kind = Kind::Age;
  uint32_t fweight = 2;        // SymbolCount
  uint32_t vweight = 1;        // SymbolCount
  int32_t bonus = -1;          // ConjectureOverlap, per shared symbol
  const Ensemble* model = nullptr;  // Model
  bool scaled_weight = false;       // Model: probability-scaled mapping

  static WeightFunctionSpec symbol_count(uint32_t f, uint32_t v);
  static WeightFunctionSpec age();
  static WeightFunctionSpec conjecture_overlap(int32_t bonus);
  static WeightFunctionSpec model_queue(const Ensemble* m, bool scaled = false);
};

struct StrategyQueue {
  uint32_t frequency = 1;
  WeightFunctionSpec spec;
};

/// Ordered queue list scheduled round-robin by integer frequencies.
struct Strategy {
  std::string name = "S";
  std::vector<StrategyQueue> queues;

  uint64_t total_frequency() const;
  bool has_age_queue() const;

  /// Rejects empty queue lists, zero frequencies, and (unless allow_no_age)
  /// strategies without an Age queue -- the fairness requirement.
  void validate(bool allow_no_age = false) const;
};

/// Queue index scheduled frequency_i times per cycle, in block order.
struct RoundRobinState {
  uint64_t position = 0;
};

size_t next_queue(RoundRobinState& state, const Strategy& s);

/// Parses `freq*Kind(args)` comma-joined, e.g.
/// `2*SymbolCount(2,1),1*Age,1*ConjectureOverlap(-1)`.
Strategy parse_strategy(const std::string& text);
std::string strategy_to_string(const Strategy& s);

/// The experiments' base strategy.
Strategy default_base_strategy();

/// Solo composition: the model selects the given clauses. Default keeps a
/// frequency-1 Age queue for fairness; pure=true drops it (the literal
/// definition, not fair). Everything but the queues is inherited from s.
Strategy compose_solo(const Strategy& s, const Ensemble& m, bool pure = false,
                      bool scaled = false);

/// Combined composition: keeps s's queues (total frequency F) and appends a
/// Model queue at frequency F, so the model makes exactly half the scheduled
/// picks per cycle.
Strategy compose_combined(const Strategy& s, const Ensemble& m, bool scaled = false);

}  // namespace prover
