#pragma once

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "prover/symbols.hpp"

namespace prover {

using VarId = uint32_t;

/// First-order term: either a variable leaf or a symbol application whose
/// argument count equals the symbol's arity. Immutable value type.
class Term {
public:
  static Term var(VarId v) {
    Term t;
    t.var_ = v;
    return t;
  }

  static Term app(SymbolId f, std::vector<Term> args = {}) {
    Term t;
    t.sym_ = f;
    t.args_ = std::move(args);
    return t;
  }

  bool is_var() const { return sym_ == kNoSymbol; }
  VarId var_id() const { return var_; }
  SymbolId functor() const { return sym_; }
  const std::vector<Term>& args() const { return args_; }

  bool operator==(const Term& o) const {
    if (is_var() != o.is_var()) return false;
    if (is_var()) return var_ == o.var_;
    return sym_ == o.sym_ && args_ == o.args_;
  }
  bool operator!=(const Term& o) const { return !(*this == o); }

private:
  static constexpr SymbolId kNoSymbol = std::numeric_limits<SymbolId>::max();

  SymbolId sym_ = kNoSymbol;
  VarId var_ = 0;
  std::vector<Term> args_;
};

/// Number of nodes on the deepest root-to-leaf path of t.
inline uint32_t term_depth(const Term& t) {
  uint32_t best = 0;
  for (const Term& a : t.args()) best = std::max(best, term_depth(a));
  return best + 1;
}

/// Collects variable ids in order of first occurrence.
void collect_vars(const Term& t, std::vector<VarId>& out);

/// True iff variable v occurs anywhere in t.
bool occurs_in(VarId v, const Term& t);

}  // namespace prover
