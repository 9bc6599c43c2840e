#include "prover/redundancy.hpp"

#include <unordered_map>

namespace prover {

bool is_tautology(const Clause& c) {
  for (size_t i = 0; i < c.literals.size(); ++i)
    for (size_t j = i + 1; j < c.literals.size(); ++j) {
      const Literal& a = c.literals[i];
      const Literal& b = c.literals[j];
      if (a.positive != b.positive && a.atom == b.atom) return true;
    }
  return false;
}

namespace {

using Bindings = std::unordered_map<VarId, Term>;

// One-way matching: variables of the pattern bind, the instance is rigid.
bool match_term(const Term& pattern, const Term& instance, Bindings& sigma) {
  if (pattern.is_var()) {
    auto it = sigma.find(pattern.var_id());
    if (it != sigma.end()) return it->second == instance;
    sigma.emplace(pattern.var_id(), instance);
    return true;
  }
  if (instance.is_var() || pattern.functor() != instance.functor()) return false;
  for (size_t i = 0; i < pattern.args().size(); ++i)
    if (!match_term(pattern.args()[i], instance.args()[i], sigma)) return false;
  return true;
}

// Assigns c's literal occurrences injectively onto d's, one consistent
// matcher across all of them, with backtracking.
bool assign(const Clause& c, const Clause& d, size_t next, std::vector<bool>& used,
            const Bindings& sigma) {
  if (next == c.literals.size()) return true;
  const Literal& lit = c.literals[next];
  for (size_t j = 0; j < d.literals.size(); ++j) {
    if (used[j]) continue;
    const Literal& cand = d.literals[j];
    if (cand.positive != lit.positive || cand.predicate() != lit.predicate()) continue;
    Bindings extended = sigma;
    if (!match_term(lit.atom, cand.atom, extended)) continue;
    used[j] = true;
    if (assign(c, d, next + 1, used, extended)) return true;
    used[j] = false;
  }
  return false;
}

}  // namespace

bool subsumes(const Clause& c, const Clause& d) {
  if (c.literals.size() > d.literals.size()) return false;
  std::vector<bool> used(d.literals.size(), false);
  return assign(c, d, 0, used, Bindings{});
}

}  // namespace prover
