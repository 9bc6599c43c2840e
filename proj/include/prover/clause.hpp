#pragma once

#include <cstdint>
#include <vector>

#include "prover/term.hpp"

namespace prover {

/// Signed literal. The atom is stored as a term whose head is a predicate
/// symbol, so unification and feature walks treat atoms and terms uniformly.
struct Literal {
  bool positive = true;
  Term atom;  // head: predicate symbol, args: terms

  Literal() = default;
  Literal(bool pos, Term a) : positive(pos), atom(std::move(a)) {}

  SymbolId predicate() const { return atom.functor(); }
  const std::vector<Term>& args() const { return atom.args(); }

  Literal negated() const { return Literal{!positive, atom}; }

  bool operator==(const Literal& o) const {
    return positive == o.positive && atom == o.atom;
  }
};

using ClauseId = uint32_t;

enum class ClauseOrigin : uint8_t { Input, Derived };

/// Multiset of literals; the empty clause is the contradiction. Ids and ages
/// are assigned by the owner (parser for inputs, search for derived clauses)
/// from a monotone creation counter.
struct Clause {
  std::vector<Literal> literals;
  ClauseId id = 0;
  ClauseOrigin origin = ClauseOrigin::Input;
  uint32_t age = 0;

  bool empty() const { return literals.empty(); }
  size_t size() const { return literals.size(); }
};

/// Variable ids appearing in c, in order of first occurrence.
std::vector<VarId> clause_vars(const Clause& c);

/// Sum over all symbol occurrences: fweight per function/predicate symbol,
/// vweight per variable occurrence.
uint64_t clause_symbol_weight(const Clause& c, uint64_t fweight, uint64_t vweight);

}  // namespace prover
