#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "prover/clause.hpp"
#include "prover/symbols.hpp"

namespace prover {

enum class Role : uint8_t { Axiom, Hypothesis, NegatedConjecture };

const char* role_name(Role r);
Role role_from_name(const std::string& s);  // throws on unknown role

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line, int column)
      : std::runtime_error(msg + " at line " + std::to_string(line) +
                           ", column " + std::to_string(column)),
        line(line),
        column(column) {}
  int line;
  int column;
};

struct Problem {
  std::string name;
  SymbolTable symbols;
  std::vector<std::pair<Clause, Role>> clauses;

  std::vector<Clause> conjecture_clauses() const {
    std::vector<Clause> out;
    for (const auto& [c, role] : clauses)
      if (role == Role::NegatedConjecture) out.push_back(c);
    return out;
  }
};

/// Parses a TPTP CNF problem: `cnf(name, role, formula).` annotated formulas,
/// `%` line comments, and `include('file').` directives resolved against
/// include_dirs in order. FOF/TFF/THF inputs are rejected.
Problem parse_problem(const std::string& text, const std::string& name = "",
                      const std::vector<std::filesystem::path>& include_dirs = {});

Problem parse_problem_file(const std::filesystem::path& path,
                           std::vector<std::filesystem::path> include_dirs = {});

/// Parses a bare disjunction (the body of a cnf formula, as produced by
/// print_clause) against an existing symbol table. Used by the trace reader.
Clause parse_clause_text(const std::string& text, SymbolTable& symbols);

std::string print_term(const Term& t, const SymbolTable& symbols);
std::string print_literal(const Literal& l, const SymbolTable& symbols);

/// Canonical clause text: positive literals before negative, then by
/// predicate name, then by printed argument string. Empty clause: `$false`.
std::string print_clause(const Clause& c, const SymbolTable& symbols);

}  // namespace prover
