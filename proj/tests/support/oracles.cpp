#include "support/oracles.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

#include "prover/substitution.hpp"

namespace oracle {

using namespace prover;

namespace {

// Constants are the arity-0 function symbols in use; the Herbrand domain is
// never empty, so a problem without constants gets one invented.
std::vector<Term> herbrand_constants(const std::vector<Clause>& clauses,
                                     const SymbolTable& symbols, SymbolTable& scratch) {
  std::set<SymbolId> seen;
  std::function<void(const Term&)> walk = [&](const Term& t) {
    if (t.is_var()) return;
    if (t.args().empty() && symbols[t.functor()].kind == SymbolKind::Function)
      seen.insert(t.functor());
    for (const Term& a : t.args()) walk(a);
  };
  for (const Clause& c : clauses)
    for (const Literal& l : c.literals)
      for (const Term& a : l.atom.args()) walk(a);
  std::vector<Term> constants;
  for (SymbolId s : seen) constants.push_back(Term::app(s));
  if (constants.empty())
    constants.push_back(Term::app(scratch.intern("herbrand_c0", 0, SymbolKind::Function)));
  return constants;
}

// All ground instances of c over the constant domain.
std::vector<Clause> ground_instances(const Clause& c, const std::vector<Term>& constants) {
  std::vector<VarId> vars = clause_vars(c);
  std::vector<Clause> out;
  if (vars.empty()) {
    out.push_back(c);
    return out;
  }
  std::vector<size_t> choice(vars.size(), 0);
  for (;;) {
    Substitution sigma;
    for (size_t i = 0; i < vars.size(); ++i) sigma.bind(vars[i], constants[choice[i]]);
    out.push_back(sigma.apply(c));
    size_t k = 0;
    while (k < choice.size()) {
      if (++choice[k] < constants.size()) break;
      choice[k] = 0;
      ++k;
    }
    if (k == choice.size()) break;
  }
  return out;
}

struct GroundProblem {
  std::vector<std::vector<std::pair<bool, size_t>>> clauses;  // (polarity, atom index)
  size_t num_atoms = 0;
};

GroundProblem ground_all(const std::vector<Clause>& clauses, const SymbolTable& symbols,
                         const std::vector<Term>& constants) {
  GroundProblem gp;
  std::map<std::string, size_t> atom_index;
  for (const Clause& c : clauses) {
    for (const Clause& inst : ground_instances(c, constants)) {
      std::vector<std::pair<bool, size_t>> lits;
      for (const Literal& l : inst.literals) {
        std::string key = print_term(l.atom, symbols);
        auto [it, fresh] = atom_index.try_emplace(key, atom_index.size());
        lits.emplace_back(l.positive, it->second);
      }
      gp.clauses.push_back(std::move(lits));
    }
  }
  gp.num_atoms = atom_index.size();
  if (gp.num_atoms > 24)
    throw std::runtime_error("truth-table oracle limit exceeded: " +
                             std::to_string(gp.num_atoms) + " ground atoms");
  return gp;
}

bool clause_true(const std::vector<std::pair<bool, size_t>>& lits, uint32_t assignment) {
  for (auto [positive, atom] : lits) {
    bool value = (assignment >> atom) & 1;
    if (value == positive) return true;
  }
  return false;
}

}  // namespace

bool unsat_by_truth_table(const std::vector<Clause>& clauses, const SymbolTable& symbols) {
  SymbolTable scratch = symbols;
  std::vector<Term> constants = herbrand_constants(clauses, symbols, scratch);
  GroundProblem gp = ground_all(clauses, scratch, constants);
  uint32_t limit = 1u << gp.num_atoms;
  for (uint32_t assignment = 0; assignment < limit; ++assignment) {
    bool all = true;
    for (const auto& lits : gp.clauses) {
      if (!clause_true(lits, assignment)) {
        all = false;
        break;
      }
    }
    if (all) return false;  // found a model
  }
  return true;
}

bool entails(const std::vector<Clause>& inputs, const Clause& c, const SymbolTable& symbols) {
  SymbolTable scratch = symbols;
  std::vector<Clause> everything = inputs;
  everything.push_back(c);
  std::vector<Term> constants = herbrand_constants(everything, symbols, scratch);

  GroundProblem gin = ground_all(inputs, scratch, constants);
  // Ground the candidate against the same atom numbering: rebuild jointly.
  std::vector<Clause> joint = inputs;
  joint.push_back(c);
  GroundProblem gall = ground_all(joint, scratch, constants);
  size_t input_instances = gin.clauses.size();

  uint32_t limit = 1u << gall.num_atoms;
  for (uint32_t assignment = 0; assignment < limit; ++assignment) {
    bool inputs_hold = true;
    for (size_t i = 0; i < input_instances; ++i) {
      if (!clause_true(gall.clauses[i], assignment)) {
        inputs_hold = false;
        break;
      }
    }
    if (!inputs_hold) continue;
    for (size_t i = input_instances; i < gall.clauses.size(); ++i)
      if (!clause_true(gall.clauses[i], assignment)) return false;
  }
  return true;
}

uint64_t sdbm_reference(const std::string& bytes) {
  uint64_t h = 0;
  for (unsigned char c : bytes) h = h * 65599u + static_cast<uint64_t>(c);
  return h;
}

namespace {

struct LabelNode {
  std::string label;
  std::vector<LabelNode> children;
};

LabelNode build_label_tree(const Term& t, const SymbolTable& symbols) {
  LabelNode n;
  if (t.is_var()) {
    n.label = "*";
    return n;
  }
  n.label = symbols.name(t.functor());
  for (const Term& a : t.args()) n.children.push_back(build_label_tree(a, symbols));
  return n;
}

void enumerate_paths(const LabelNode& node, std::vector<std::string> prefix,
                     std::vector<std::vector<std::string>>& out) {
  prefix.push_back(node.label);
  if (prefix.size() == 3) {
    out.push_back(prefix);
    return;
  }
  if (node.children.empty()) {
    while (prefix.size() < 3) prefix.push_back("\xE2\x96\xA1");
    out.push_back(prefix);
    return;
  }
  for (const LabelNode& child : node.children) enumerate_paths(child, prefix, out);
}

std::vector<std::vector<std::string>> literal_paths(const Literal& l,
                                                    const SymbolTable& symbols) {
  LabelNode root;
  root.label = (l.positive ? "" : "~") + symbols.name(l.predicate());
  for (const Term& a : l.atom.args()) root.children.push_back(build_label_tree(a, symbols));
  std::vector<std::vector<std::string>> paths;
  enumerate_paths(root, {}, paths);
  return paths;
}

}  // namespace

std::map<std::string, uint64_t> walk_counts_brute(const Clause& c, const SymbolTable& symbols,
                                                  bool with_count_features) {
  std::map<std::string, uint64_t> counts;
  for (const Literal& l : c.literals) {
    for (const auto& path : literal_paths(l, symbols)) {
      std::string key = "V:";
      for (size_t i = 0; i < path.size(); ++i) {
        if (i) key += '/';
        key += path[i];
      }
      counts[key]++;
    }
  }
  if (with_count_features) {
    // recounted here by independent traversal
    uint64_t len = c.literals.size(), pos = 0, neg = 0, vars = 0, depth = 0;
    std::function<uint64_t(const Term&)> d = [&](const Term& t) -> uint64_t {
      if (t.is_var()) {
        ++vars;
        return 1;
      }
      uint64_t best = 0;
      for (const Term& a : t.args()) best = std::max(best, d(a));
      return best + 1;
    };
    for (const Literal& l : c.literals) {
      if (l.positive)
        ++pos;
      else
        ++neg;
      for (const Term& a : l.atom.args()) depth = std::max(depth, d(a));
    }
    if (len) counts["C:len"] += len;
    if (pos) counts["C:pos"] += pos;
    if (neg) counts["C:neg"] += neg;
    if (depth) counts["C:depth"] += depth;
    if (vars) counts["C:vars"] += vars;
  }
  return counts;
}

uint64_t walk_path_count_brute(const Clause& c) {
  // Path count is label-independent; reuse the enumerator with dummy names.
  uint64_t total = 0;
  std::function<void(const Term&, int)> walk = [&](const Term& t, int depth) {
    if (depth == 3) {
      ++total;
      return;
    }
    if (t.is_var() || t.args().empty()) {
      ++total;  // padded path
      return;
    }
    for (const Term& a : t.args()) walk(a, depth + 1);
  };
  for (const Literal& l : c.literals) {
    if (l.atom.args().empty()) {
      ++total;
      continue;
    }
    for (const Term& a : l.atom.args()) walk(a, 2);
  }
  return total;
}

BruteSplit best_split_brute(const std::vector<Example>& data, uint32_t dimension, double lambda,
                            double gamma, uint32_t min_leaf) {
  const size_t n = data.size();
  std::vector<double> grad(n), hess(n);
  for (size_t i = 0; i < n; ++i) {
    double p = 0.5;  // margin 0
    grad[i] = p - static_cast<double>(data[i].label);
    hess[i] = p * (1.0 - p);
  }
  double g_total = 0.0, h_total = 0.0;
  for (size_t i = 0; i < n; ++i) {
    g_total += grad[i];
    h_total += hess[i];
  }
  double parent = g_total * g_total / (h_total + lambda);

  BruteSplit best;
  for (uint32_t f = 0; f < dimension; ++f) {
    std::vector<double> values;
    for (const Example& e : data) values.push_back(e.vector.get(f));
    std::vector<double> distinct = values;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (size_t k = 0; k + 1 < distinct.size(); ++k) {
      double threshold = (distinct[k] + distinct[k + 1]) / 2.0;
      double gl = 0.0, hl = 0.0;
      size_t count_left = 0;
      for (size_t i = 0; i < n; ++i) {
        if (values[i] < threshold) {
          gl += grad[i];
          hl += hess[i];
          ++count_left;
        }
      }
      size_t count_right = n - count_left;
      if (count_left < min_leaf || count_right < min_leaf) continue;
      double gr = g_total - gl, hr = h_total - hl;
      double gain =
          0.5 * (gl * gl / (hl + lambda) + gr * gr / (hr + lambda) - parent) - gamma;
      if (!best.found || gain > best.gain) {
        best.found = true;
        best.gain = gain;
        best.feature = f;
        best.threshold = threshold;
      }
    }
  }
  return best;
}

namespace {

using VarMap = std::map<VarId, VarId>;

bool variant_term(const Term& a, const Term& b, VarMap& fwd, VarMap& bwd) {
  if (a.is_var() != b.is_var()) return false;
  if (a.is_var()) {
    auto f = fwd.find(a.var_id());
    auto g = bwd.find(b.var_id());
    if (f == fwd.end() && g == bwd.end()) {
      fwd[a.var_id()] = b.var_id();
      bwd[b.var_id()] = a.var_id();
      return true;
    }
    return f != fwd.end() && g != bwd.end() && f->second == b.var_id() &&
           g->second == a.var_id();
  }
  if (a.functor() != b.functor()) return false;
  for (size_t i = 0; i < a.args().size(); ++i)
    if (!variant_term(a.args()[i], b.args()[i], fwd, bwd)) return false;
  return true;
}

bool variant_assign(const Clause& a, const Clause& b, size_t next, std::vector<bool>& used,
                    const VarMap& fwd, const VarMap& bwd) {
  if (next == a.literals.size()) return true;
  const Literal& la = a.literals[next];
  for (size_t j = 0; j < b.literals.size(); ++j) {
    if (used[j]) continue;
    const Literal& lb = b.literals[j];
    if (la.positive != lb.positive || la.predicate() != lb.predicate()) continue;
    VarMap f = fwd, g = bwd;
    if (!variant_term(la.atom, lb.atom, f, g)) continue;
    used[j] = true;
    if (variant_assign(a, b, next + 1, used, f, g)) return true;
    used[j] = false;
  }
  return false;
}

}  // namespace

bool is_variant(const Clause& a, const Clause& b) {
  if (a.literals.size() != b.literals.size()) return false;
  std::vector<bool> used(b.literals.size(), false);
  return variant_assign(a, b, 0, used, VarMap{}, VarMap{});
}

RandomSignature make_signature(SymbolTable& symbols, bool with_functions) {
  RandomSignature sig;
  sig.predicates = {symbols.intern("p", 1, SymbolKind::Predicate),
                    symbols.intern("q", 2, SymbolKind::Predicate),
                    symbols.intern("s", 0, SymbolKind::Predicate)};
  sig.constants = {symbols.intern("a", 0, SymbolKind::Function),
                   symbols.intern("b", 0, SymbolKind::Function),
                   symbols.intern("c", 0, SymbolKind::Function)};
  if (with_functions) {
    sig.functions = {symbols.intern("f", 1, SymbolKind::Function),
                     symbols.intern("g", 2, SymbolKind::Function)};
  }
  return sig;
}

Term random_term(std::mt19937& rng, const RandomSignature& sig, const SymbolTable& symbols,
                 int max_depth, int num_vars) {
  std::uniform_int_distribution<int> kind(0, 9);
  int k = kind(rng);
  if (max_depth <= 1 || sig.functions.empty() || k < 5) {
    if (k < 4 && num_vars > 0) {
      std::uniform_int_distribution<int> var(0, num_vars - 1);
      return Term::var(static_cast<VarId>(var(rng)));
    }
    std::uniform_int_distribution<size_t> c(0, sig.constants.size() - 1);
    return Term::app(sig.constants[c(rng)]);
  }
  std::uniform_int_distribution<size_t> f(0, sig.functions.size() - 1);
  SymbolId fn = sig.functions[f(rng)];
  std::vector<Term> args;
  for (uint32_t i = 0; i < symbols.arity(fn); ++i)
    args.push_back(random_term(rng, sig, symbols, max_depth - 1, num_vars));
  return Term::app(fn, std::move(args));
}

Clause random_clause(std::mt19937& rng, const RandomSignature& sig, const SymbolTable& symbols,
                     int max_literals, int max_depth, int num_vars) {
  std::uniform_int_distribution<int> nlit(1, max_literals);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<size_t> pred(0, sig.predicates.size() - 1);
  Clause c;
  int n = nlit(rng);
  for (int i = 0; i < n; ++i) {
    SymbolId p = sig.predicates[pred(rng)];
    std::vector<Term> args;
    for (uint32_t k = 0; k < symbols.arity(p); ++k)
      args.push_back(random_term(rng, sig, symbols, max_depth, num_vars));
    c.literals.emplace_back(coin(rng) == 1, Term::app(p, std::move(args)));
  }
  return c;
}

Problem random_ground_problem(std::mt19937& rng) {
  Problem problem;
  RandomSignature sig = make_signature(problem.symbols, false);
  std::uniform_int_distribution<int> nclauses(3, 8);
  int n = nclauses(rng);
  for (int i = 0; i < n; ++i) {
    Clause c = random_clause(rng, sig, problem.symbols, 3, 1, 2);
    c.id = static_cast<ClauseId>(i);
    c.age = static_cast<uint32_t>(i);
    Role role = i + 1 == n ? Role::NegatedConjecture : Role::Axiom;
    problem.clauses.emplace_back(std::move(c), role);
  }
  problem.name = "random";
  return problem;
}

SparseVector random_sparse_vector(std::mt19937& rng, uint32_t dimension, int max_nnz) {
  std::uniform_int_distribution<int> nnz(0, max_nnz);
  std::uniform_int_distribution<uint32_t> index(0, dimension - 1);
  std::uniform_int_distribution<int> value(1, 5);
  std::set<uint32_t> indices;
  int n = nnz(rng);
  for (int i = 0; i < n; ++i) indices.insert(index(rng));
  SparseVector v;
  v.dimension = dimension;
  for (uint32_t idx : indices) v.entries.emplace_back(idx, static_cast<double>(value(rng)));
  return v;
}

}  // namespace oracle
