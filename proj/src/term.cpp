#include "prover/term.hpp"

#include <algorithm>

namespace prover {

void collect_vars(const Term& t, std::vector<VarId>& out) {
  if (t.is_var()) {
    if (std::find(out.begin(), out.end(), t.var_id()) == out.end())
      out.push_back(t.var_id());
    return;
  }
  for (const Term& a : t.args()) collect_vars(a, out);
}

bool occurs_in(VarId v, const Term& t) {
  if (t.is_var()) return t.var_id() == v;
  for (const Term& a : t.args())
    if (occurs_in(v, a)) return true;
  return false;
}

}  // namespace prover
