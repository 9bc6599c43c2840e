#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "prover/redundancy.hpp"
#include "prover/substitution.hpp"
#include "support/oracles.hpp"

using namespace prover;

namespace {

struct Sig {
  SymbolTable symbols;
  SymbolId p, q, f, g, a, b;

  Sig() {
    p = symbols.intern("p", 1, SymbolKind::Predicate);
    q = symbols.intern("q", 2, SymbolKind::Predicate);
    f = symbols.intern("f", 1, SymbolKind::Function);
    g = symbols.intern("g", 2, SymbolKind::Function);
    a = symbols.intern("a", 0, SymbolKind::Function);
    b = symbols.intern("b", 0, SymbolKind::Function);
  }
};

Term X() { return Term::var(0); }
Term Y() { return Term::var(1); }

Clause clause(std::vector<Literal> lits) {
  Clause c;
  c.literals = std::move(lits);
  return c;
}

}  // namespace

TEST_CASE("unify binds a variable to a term") {
  Sig s;
  auto sigma = unify(X(), Term::app(s.f, {Term::app(s.a)}));
  REQUIRE(sigma.has_value());
  CHECK(sigma->apply(X()) == Term::app(s.f, {Term::app(s.a)}));
}

TEST_CASE("unify fails on a symbol clash through shared variables") {
  Sig s;
  Term left = Term::app(s.g, {X(), X()});
  Term right = Term::app(s.g, {Term::app(s.a), Term::app(s.b)});
  CHECK_FALSE(unify(left, right).has_value());
}

TEST_CASE("occurs check rejects X = f(X)") {
  Sig s;
  CHECK_FALSE(unify(X(), Term::app(s.f, {X()})).has_value());
}

TEST_CASE("apply substitutes simultaneously and leaves unbound variables") {
  Sig s;
  Substitution sub;
  sub.bind(0, Term::app(s.a));
  Term atom = Term::app(s.q, {X(), Y()});
  CHECK(sub.apply(atom) == Term::app(s.q, {Term::app(s.a), Y()}));

  Substitution empty;
  CHECK(empty.apply(atom) == atom);

  Substitution sim;
  sim.bind(0, Term::app(s.f, {Y()}));
  Term gxx = Term::app(s.g, {X(), X()});
  Term expect = Term::app(s.g, {Term::app(s.f, {Y()}), Term::app(s.f, {Y()})});
  CHECK(sim.apply(gxx) == expect);
}

TEST_CASE("unifiers are idempotent and equalize both sides") {
  Sig s;
  std::mt19937 rng(7);
  oracle::RandomSignature rsig = oracle::make_signature(s.symbols, true);
  int unified = 0;
  for (int i = 0; i < 500; ++i) {
    Term t1 = oracle::random_term(rng, rsig, s.symbols, 3, 2);
    Term t2 = oracle::random_term(rng, rsig, s.symbols, 3, 2);
    auto sigma = unify(t1, t2);
    if (!sigma) continue;
    ++unified;
    CHECK(sigma->apply(t1) == sigma->apply(t2));
    // idempotence: a second application changes nothing
    CHECK(sigma->apply(sigma->apply(t1)) == sigma->apply(t1));
    for (const auto& [v, t] : sigma->bindings()) CHECK_FALSE(occurs_in(v, t));
  }
  CHECK(unified > 20);
}

TEST_CASE("returned unifier is most general over a finite universe") {
  // Universe: depth <= 2 terms over one constant, one unary function and
  // variables X, Y. Every unifier theta of (t1, t2) must factor through the
  // computed sigma as theta = delta . sigma for some delta.
  Sig s;
  std::vector<Term> universe = {X(), Y(), Term::app(s.a), Term::app(s.f, {X()}),
                                Term::app(s.f, {Y()}), Term::app(s.f, {Term::app(s.a)})};
  std::vector<Substitution> all_subs;
  for (const Term& tx : universe)
    for (const Term& ty : universe) {
      Substitution sub;
      if (!(tx.is_var() && tx.var_id() == 0)) sub.bind(0, tx);
      if (!(ty.is_var() && ty.var_id() == 1)) sub.bind(1, ty);
      // keep only idempotent candidates (no X -> f(X) style bindings)
      bool ok = true;
      for (const auto& [v, t] : sub.bindings())
        if (occurs_in(v, t)) ok = false;
      if (ok) all_subs.push_back(std::move(sub));
    }

  for (const Term& t1 : universe) {
    for (const Term& t2 : universe) {
      auto sigma = unify(t1, t2);
      if (!sigma) {
        for (const auto& theta : all_subs) CHECK(theta.apply(t1) != theta.apply(t2));
        continue;
      }
      std::vector<VarId> vars;
      collect_vars(t1, vars);
      collect_vars(t2, vars);
      for (const auto& theta : all_subs) {
        if (theta.apply(t1) != theta.apply(t2)) continue;
        bool factors = false;
        for (const auto& delta : all_subs) {
          bool match = true;
          for (VarId v : vars) {
            if (theta.apply(Term::var(v)) != delta.apply(sigma->apply(Term::var(v)))) {
              match = false;
              break;
            }
          }
          if (match) {
            factors = true;
            break;
          }
        }
        CHECK_MESSAGE(factors, "unifier does not factor through computed mgu");
      }
    }
  }
}

TEST_CASE("rename_apart produces fresh variants") {
  Sig s;
  FreshVarCounter counter(100);
  Clause c = clause({Literal(true, Term::app(s.p, {X()}))});
  Clause r1 = rename_apart(c, counter);
  CHECK(r1.literals[0].args()[0].is_var());
  CHECK(r1.literals[0].args()[0].var_id() >= 100);

  Clause ground = clause({Literal(true, Term::app(s.p, {Term::app(s.a)}))});
  Clause rg = rename_apart(ground, counter);
  CHECK(rg.literals == ground.literals);

  Clause r2 = rename_apart(c, counter);
  CHECK(r1.literals[0].args()[0].var_id() != r2.literals[0].args()[0].var_id());
}

TEST_CASE("rename_apart preserves structure up to bijective renaming") {
  Sig s;
  std::mt19937 rng(21);
  oracle::RandomSignature rsig = oracle::make_signature(s.symbols, true);
  FreshVarCounter counter(1000);
  for (int i = 0; i < 100; ++i) {
    Clause c = oracle::random_clause(rng, rsig, s.symbols, 4, 3, 3);
    Clause r = rename_apart(c, counter);
    CHECK(oracle::is_variant(c, r));
  }
}

TEST_CASE("is_tautology detects complementary atoms") {
  Sig s;
  Clause taut = clause({Literal(true, Term::app(s.p, {X()})),
                        Literal(false, Term::app(s.p, {X()}))});
  CHECK(is_tautology(taut));

  Clause not_taut = clause({Literal(true, Term::app(s.p, {X()})),
                            Literal(false, Term::app(s.p, {Y()}))});
  CHECK_FALSE(is_tautology(not_taut));

  CHECK_FALSE(is_tautology(Clause{}));
}

TEST_CASE("subsumes follows multiset semantics") {
  Sig s;
  Clause pX = clause({Literal(true, Term::app(s.p, {X()}))});
  Clause pa_qb = clause({Literal(true, Term::app(s.p, {Term::app(s.a)})),
                         Literal(true, Term::app(s.q, {Term::app(s.b), Term::app(s.b)}))});
  CHECK(subsumes(pX, pa_qb));

  Clause pa = clause({Literal(true, Term::app(s.p, {Term::app(s.a)}))});
  CHECK_FALSE(subsumes(pa, pX));  // no matcher from ground to variable

  CHECK(subsumes(pa, pa));  // identity

  // sigma may not merge two occurrences onto one
  Clause pXpY = clause({Literal(true, Term::app(s.p, {X()})),
                        Literal(true, Term::app(s.p, {Y()}))});
  CHECK_FALSE(subsumes(pXpY, pa));
  CHECK(subsumes(pXpY, pa_qb) == false);
}

TEST_CASE("subsumption needs one consistent matcher across literals") {
  Sig s;
  // p(X) | q(X,X) should not subsume p(a) | q(b,b)
  Clause c = clause({Literal(true, Term::app(s.p, {X()})),
                     Literal(true, Term::app(s.q, {X(), X()}))});
  Clause d = clause({Literal(true, Term::app(s.p, {Term::app(s.a)})),
                     Literal(true, Term::app(s.q, {Term::app(s.b), Term::app(s.b)}))});
  CHECK_FALSE(subsumes(c, d));
  Clause d2 = clause({Literal(true, Term::app(s.p, {Term::app(s.a)})),
                      Literal(true, Term::app(s.q, {Term::app(s.a), Term::app(s.a)}))});
  CHECK(subsumes(c, d2));
}

TEST_CASE("subsumes is reflexive and transitive on random clauses") {
  Sig s;
  std::mt19937 rng(5);
  oracle::RandomSignature rsig = oracle::make_signature(s.symbols, true);
  std::vector<Clause> sample;
  for (int i = 0; i < 60; ++i)
    sample.push_back(oracle::random_clause(rng, rsig, s.symbols, 3, 2, 2));
  for (const Clause& c : sample) CHECK(subsumes(c, c));
  int chains = 0;
  for (const Clause& c1 : sample)
    for (const Clause& c2 : sample)
      for (const Clause& c3 : sample) {
        if (subsumes(c1, c2) && subsumes(c2, c3)) {
          ++chains;
          CHECK(subsumes(c1, c3));
        }
      }
  CHECK(chains > 0);
}

TEST_CASE("clause_symbol_weight counts occurrences") {
  Sig s;
  Clause c = clause({Literal(true, Term::app(s.p, {Term::app(s.f, {X()})}))});
  CHECK(clause_symbol_weight(c, 2, 1) == 5);  // p=2, f=2, X=1

  CHECK(clause_symbol_weight(Clause{}, 7, 3) == 0);

  Clause dup = clause({Literal(true, Term::app(s.p, {Term::app(s.a)})),
                       Literal(true, Term::app(s.p, {Term::app(s.a)}))});
  CHECK(clause_symbol_weight(dup, 1, 1) == 4);
}
