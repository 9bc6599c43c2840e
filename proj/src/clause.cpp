#include "prover/clause.hpp"

namespace prover {

std::vector<VarId> clause_vars(const Clause& c) {
  std::vector<VarId> vars;
  for (const Literal& l : c.literals) collect_vars(l.atom, vars);
  return vars;
}

namespace {

uint64_t term_weight(const Term& t, uint64_t fweight, uint64_t vweight) {
  if (t.is_var()) return vweight;
  uint64_t w = fweight;
  for (const Term& a : t.args()) w += term_weight(a, fweight, vweight);
  return w;
}

}  // namespace

uint64_t clause_symbol_weight(const Clause& c, uint64_t fweight, uint64_t vweight) {
  uint64_t w = 0;
  for (const Literal& l : c.literals) w += term_weight(l.atom, fweight, vweight);
  return w;
}

}  // namespace prover
