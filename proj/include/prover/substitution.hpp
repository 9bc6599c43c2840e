#pragma once

#include <optional>
#include <unordered_map>

#include "prover/clause.hpp"

namespace prover {

/// Idempotent variable binding map: no right-hand side contains a bound
/// variable, so one application pass is a fixpoint.
class Substitution {
public:
  Substitution() = default;

  bool empty() const { return bindings_.empty(); }
  size_t size() const { return bindings_.size(); }

  const Term* lookup(VarId v) const {
    auto it = bindings_.find(v);
    return it == bindings_.end() ? nullptr : &it->second;
  }

  /// Inserts v -> t verbatim. Caller guarantees idempotence is preserved;
  /// unify() produces fully resolved bindings and is the normal producer.
  void bind(VarId v, Term t) { bindings_[v] = std::move(t); }

  Term apply(const Term& t) const;
  Literal apply(const Literal& l) const;
  Clause apply(const Clause& c) const;

  const std::unordered_map<VarId, Term>& bindings() const { return bindings_; }

private:
  std::unordered_map<VarId, Term> bindings_;
};

/// Most general unifier of two terms (or literal atoms), with occurs check.
/// Returns nothing iff the terms have no unifier.
std::optional<Substitution> unify(const Term& a, const Term& b);

/// Source of fresh variable ids for one proof search.
class FreshVarCounter {
public:
  explicit FreshVarCounter(VarId start = 0) : next_(start) {}
  VarId fresh() { return next_++; }
  VarId next_value() const { return next_; }

private:
  VarId next_;
};

/// Variant of c whose variables are fresh draws from counter; shares no
/// variables with any previous renaming from the same counter.
Clause rename_apart(const Clause& c, FreshVarCounter& counter);

}  // namespace prover
