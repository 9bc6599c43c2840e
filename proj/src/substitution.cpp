#include "prover/substitution.hpp"

namespace prover {

Term Substitution::apply(const Term& t) const {
  if (t.is_var()) {
    const Term* bound = lookup(t.var_id());
    return bound ? *bound : t;
  }
  if (t.args().empty()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(apply(a));
  return Term::app(t.functor(), std::move(args));
}

Literal Substitution::apply(const Literal& l) const {
  return Literal{l.positive, apply(l.atom)};
}

Clause Substitution::apply(const Clause& c) const {
  Clause out = c;
  for (Literal& l : out.literals) l = apply(l);
  return out;
}

namespace {

// Dereferences variables through the working bindings until a non-variable
// term or an unbound variable is reached.
const Term& walk(const Term& t, const std::unordered_map<VarId, Term>& bindings) {
  const Term* cur = &t;
  while (cur->is_var()) {
    auto it = bindings.find(cur->var_id());
    if (it == bindings.end()) break;
    cur = &it->second;
  }
  return *cur;
}

bool occurs_walked(VarId v, const Term& t, const std::unordered_map<VarId, Term>& bindings) {
  const Term& w = walk(t, bindings);
  if (w.is_var()) return w.var_id() == v;
  for (const Term& a : w.args())
    if (occurs_walked(v, a, bindings)) return true;
  return false;
}

bool unify_rec(const Term& a, const Term& b, std::unordered_map<VarId, Term>& bindings) {
  const Term& ta = walk(a, bindings);
  const Term& tb = walk(b, bindings);
  if (ta.is_var() && tb.is_var() && ta.var_id() == tb.var_id()) return true;
  if (ta.is_var()) {
    if (occurs_walked(ta.var_id(), tb, bindings)) return false;
    bindings.emplace(ta.var_id(), tb);
    return true;
  }
  if (tb.is_var()) {
    if (occurs_walked(tb.var_id(), ta, bindings)) return false;
    bindings.emplace(tb.var_id(), ta);
    return true;
  }
  if (ta.functor() != tb.functor()) return false;
  for (size_t i = 0; i < ta.args().size(); ++i)
    if (!unify_rec(ta.args()[i], tb.args()[i], bindings)) return false;
  return true;
}

// Fully resolves a term under triangular bindings. Terminates because the
// occurs check keeps the binding graph acyclic.
Term resolve(const Term& t, const std::unordered_map<VarId, Term>& bindings) {
  const Term& w = walk(t, bindings);
  if (w.is_var()) return w;
  if (w.args().empty()) return w;
  std::vector<Term> args;
  args.reserve(w.args().size());
  for (const Term& a : w.args()) args.push_back(resolve(a, bindings));
  return Term::app(w.functor(), std::move(args));
}

}  // namespace

std::optional<Substitution> unify(const Term& a, const Term& b) {
  std::unordered_map<VarId, Term> bindings;
  if (!unify_rec(a, b, bindings)) return std::nullopt;
  // Flatten the triangular bindings into an idempotent substitution.
  Substitution sigma;
  for (const auto& [v, t] : bindings) sigma.bind(v, resolve(t, bindings));
  return sigma;
}

Clause rename_apart(const Clause& c, FreshVarCounter& counter) {
  std::vector<VarId> vars = clause_vars(c);
  if (vars.empty()) return c;
  Substitution renaming;
  for (VarId v : vars) renaming.bind(v, Term::var(counter.fresh()));
  return renaming.apply(c);
}

}  // namespace prover
