#include "prover/tptp.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace prover {

const char* role_name(Role r) {
  switch (r) {
    case Role::Axiom: return "axiom";
    case Role::Hypothesis: return "hypothesis";
    case Role::NegatedConjecture: return "negated_conjecture";
  }
  return "axiom";
}

Role role_from_name(const std::string& s) {
  if (s == "axiom") return Role::Axiom;
  if (s == "hypothesis") return Role::Hypothesis;
  if (s == "negated_conjecture") return Role::NegatedConjecture;
  throw std::runtime_error("unknown role '" + s + "'");
}

namespace {

enum class Tok {
  LParen, RParen, Comma, Period, Pipe, Tilde, Equal, NotEqual,
  LowerWord, UpperWord, Quoted, DollarWord, End
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int column = 1;
};

class Lexer {
public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip_trivia();
    Token t;
    t.line = line_;
    t.column = column_;
    if (pos_ >= text_.size()) {
      t.kind = Tok::End;
      return t;
    }
    char c = text_[pos_];
    switch (c) {
      case '(': advance(); t.kind = Tok::LParen; return t;
      case ')': advance(); t.kind = Tok::RParen; return t;
      case ',': advance(); t.kind = Tok::Comma; return t;
      case '.': advance(); t.kind = Tok::Period; return t;
      case '|': advance(); t.kind = Tok::Pipe; return t;
      case '~': advance(); t.kind = Tok::Tilde; return t;
      case '=': advance(); t.kind = Tok::Equal; return t;
      case '!':
        advance();
        if (pos_ < text_.size() && text_[pos_] == '=') {
          advance();
          t.kind = Tok::NotEqual;
          return t;
        }
        throw ParseError("unexpected '!'", t.line, t.column);
      case '\'': {
        advance();
        std::string s;
        while (pos_ < text_.size() && text_[pos_] != '\'') {
          s.push_back(text_[pos_]);
          advance();
        }
        if (pos_ >= text_.size()) throw ParseError("unterminated quoted name", t.line, t.column);
        advance();  // closing quote
        t.kind = Tok::Quoted;
        t.text = std::move(s);
        return t;
      }
      default: break;
    }
    if (c == '$') {
      advance();
      std::string s = "$";
      while (pos_ < text_.size() && word_char(text_[pos_])) {
        s.push_back(text_[pos_]);
        advance();
      }
      t.kind = Tok::DollarWord;
      t.text = std::move(s);
      return t;
    }
    if (std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c))) {
      std::string s;
      while (pos_ < text_.size() && word_char(text_[pos_])) {
        s.push_back(text_[pos_]);
        advance();
      }
      t.kind = Tok::LowerWord;
      t.text = std::move(s);
      return t;
    }
    if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
      std::string s;
      while (pos_ < text_.size() && word_char(text_[pos_])) {
        s.push_back(text_[pos_]);
        advance();
      }
      t.kind = Tok::UpperWord;
      t.text = std::move(s);
      return t;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line_, column_);
  }

private:
  static bool word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_trivia() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class Parser {
public:
  Parser(const std::string& text, SymbolTable& symbols,
         std::vector<std::pair<Clause, Role>>& clauses)
      : lexer_(text), symbols_(symbols), clauses_(clauses) {
    shift();
  }

  void parse_items(const std::vector<std::filesystem::path>& include_dirs, int include_depth) {
    while (tok_.kind != Tok::End) {
      if (tok_.kind != Tok::LowerWord) fail("expected 'cnf' or 'include'");
      if (tok_.text == "cnf") {
        shift();
        parse_annotated();
      } else if (tok_.text == "include") {
        shift();
        parse_include(include_dirs, include_depth);
      } else if (tok_.text == "fof" || tok_.text == "tff" || tok_.text == "thf" ||
                 tok_.text == "tcf") {
        fail("only the CNF dialect is supported (got '" + tok_.text + "')");
      } else {
        fail("expected 'cnf' or 'include' (got '" + tok_.text + "')");
      }
    }
  }

  Clause parse_bare_clause() {
    Clause c = parse_disjunction();
    if (tok_.kind != Tok::End) fail("trailing input after clause");
    return c;
  }

private:
  void shift() { tok_ = lexer_.next(); }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, tok_.line, tok_.column);
  }

  SymbolId intern_or_fail(const std::string& name, uint32_t arity, SymbolKind kind) {
    try {
      return symbols_.intern(name, arity, kind);
    } catch (const std::runtime_error& e) {
      fail(e.what());
    }
  }

  Term parse_term() {
    if (tok_.kind == Tok::UpperWord) {
      std::string name = tok_.text;
      shift();
      auto [it, inserted] = clause_vars_.try_emplace(name, next_var_);
      if (inserted) ++next_var_;
      return Term::var(it->second);
    }
    if (tok_.kind != Tok::LowerWord) fail("expected term");
    std::string name = tok_.text;
    shift();
    std::vector<Term> args = parse_optional_args();
    SymbolId f = intern_or_fail(name, static_cast<uint32_t>(args.size()), SymbolKind::Function);
    return Term::app(f, std::move(args));
  }

  std::vector<Term> parse_optional_args() {
    std::vector<Term> args;
    if (tok_.kind == Tok::LParen) {
      shift();
      args.push_back(parse_term());
      while (tok_.kind == Tok::Comma) {
        shift();
        args.push_back(parse_term());
      }
      if (tok_.kind != Tok::RParen) fail("expected ')'");
      shift();
    }
    return args;
  }

  void push_equality(Clause& clause, bool positive, Term lhs) {
    bool negated = tok_.kind == Tok::NotEqual;
    shift();
    Term rhs = parse_term();
    SymbolId eq = intern_or_fail("=", 2, SymbolKind::Predicate);
    clause.literals.emplace_back(positive != negated,
                                 Term::app(eq, {std::move(lhs), std::move(rhs)}));
  }

  // literal := ['~'] (predicate[(args)] | term ('='|'!=') term | $false)
  // `=` is an ordinary binary predicate with no special semantics.
  void parse_literal(Clause& clause, bool& saw_false) {
    bool positive = true;
    if (tok_.kind == Tok::Tilde) {
      positive = false;
      shift();
    }
    if (tok_.kind == Tok::DollarWord) {
      if (tok_.text == "$false" && positive) {
        saw_false = true;
        shift();
        return;  // identity of disjunction
      }
      fail("unsupported formula '" + tok_.text + "'");
    }
    if (tok_.kind == Tok::UpperWord) {
      Term lhs = parse_term();
      if (tok_.kind != Tok::Equal && tok_.kind != Tok::NotEqual)
        fail("a literal cannot be a bare variable");
      push_equality(clause, positive, std::move(lhs));
      return;
    }
    if (tok_.kind != Tok::LowerWord) fail("expected literal");
    std::string name = tok_.text;
    shift();
    std::vector<Term> args = parse_optional_args();
    if (tok_.kind == Tok::Equal || tok_.kind == Tok::NotEqual) {
      SymbolId f = intern_or_fail(name, static_cast<uint32_t>(args.size()), SymbolKind::Function);
      push_equality(clause, positive, Term::app(f, std::move(args)));
      return;
    }
    SymbolId pred = intern_or_fail(name, static_cast<uint32_t>(args.size()), SymbolKind::Predicate);
    clause.literals.emplace_back(positive, Term::app(pred, std::move(args)));
  }

  Clause parse_disjunction() {
    clause_vars_.clear();
    next_var_ = 0;
    Clause clause;
    bool saw_false = false;
    bool parenthesized = false;
    if (tok_.kind == Tok::LParen) {
      parenthesized = true;
      shift();
    }
    parse_literal(clause, saw_false);
    while (tok_.kind == Tok::Pipe) {
      shift();
      parse_literal(clause, saw_false);
    }
    if (parenthesized) {
      if (tok_.kind != Tok::RParen) fail("expected ')'");
      shift();
    }
    if (clause.literals.empty() && !saw_false) fail("empty formula");
    return clause;
  }

  void parse_annotated() {
    if (tok_.kind != Tok::LParen) fail("expected '('");
    shift();
    if (tok_.kind != Tok::LowerWord && tok_.kind != Tok::UpperWord && tok_.kind != Tok::Quoted)
      fail("expected formula name");
    shift();
    if (tok_.kind != Tok::Comma) fail("expected ','");
    shift();
    if (tok_.kind != Tok::LowerWord) fail("expected role");
    Role role;
    try {
      role = role_from_name(tok_.text);
    } catch (const std::runtime_error& e) {
      fail(e.what());
    }
    shift();
    if (tok_.kind != Tok::Comma) fail("expected ','");
    shift();
    Clause clause = parse_disjunction();
    if (tok_.kind != Tok::RParen) fail("expected ')'");
    shift();
    if (tok_.kind != Tok::Period) fail("expected '.'");
    shift();
    clause.id = static_cast<ClauseId>(clauses_.size());
    clause.age = clause.id;
    clause.origin = ClauseOrigin::Input;
    clauses_.emplace_back(std::move(clause), role);
  }

  void parse_include(const std::vector<std::filesystem::path>& include_dirs, int depth) {
    if (depth > 16) fail("include nesting too deep (cycle?)");
    if (tok_.kind != Tok::LParen) fail("expected '('");
    shift();
    if (tok_.kind != Tok::Quoted) fail("expected quoted include file name");
    std::string file = tok_.text;
    int line = tok_.line, column = tok_.column;
    shift();
    if (tok_.kind != Tok::RParen) fail("expected ')'");
    shift();
    if (tok_.kind != Tok::Period) fail("expected '.'");
    shift();
    for (const auto& dir : include_dirs) {
      std::filesystem::path candidate = dir / file;
      std::ifstream in(candidate);
      if (!in) continue;
      std::stringstream buf;
      buf << in.rdbuf();
      Parser nested(buf.str(), symbols_, clauses_);
      nested.parse_items(include_dirs, depth + 1);
      return;
    }
    throw ParseError("cannot resolve include '" + file + "'", line, column);
  }

  Lexer lexer_;
  SymbolTable& symbols_;
  std::vector<std::pair<Clause, Role>>& clauses_;
  Token tok_;
  std::unordered_map<std::string, VarId> clause_vars_;  // scoped per clause
  VarId next_var_ = 0;
};

}  // namespace

Problem parse_problem(const std::string& text, const std::string& name,
                      const std::vector<std::filesystem::path>& include_dirs) {
  Problem problem;
  problem.name = name;
  Parser parser(text, problem.symbols, problem.clauses);
  parser.parse_items(include_dirs, 0);
  if (problem.clauses.empty()) throw ParseError("no clauses", 1, 1);
  return problem;
}

Problem parse_problem_file(const std::filesystem::path& path,
                           std::vector<std::filesystem::path> include_dirs) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open problem file: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  if (include_dirs.empty()) include_dirs.push_back(path.parent_path());
  return parse_problem(buf.str(), path.stem().string(), include_dirs);
}

Clause parse_clause_text(const std::string& text, SymbolTable& symbols) {
  std::vector<std::pair<Clause, Role>> scratch;
  if (text == "$false") return Clause{};
  Parser parser(text, symbols, scratch);
  return parser.parse_bare_clause();
}

std::string print_term(const Term& t, const SymbolTable& symbols) {
  if (t.is_var()) return "X" + std::to_string(t.var_id());
  std::string out = symbols.name(t.functor());
  if (!t.args().empty()) {
    out += '(';
    for (size_t i = 0; i < t.args().size(); ++i) {
      if (i) out += ',';
      out += print_term(t.args()[i], symbols);
    }
    out += ')';
  }
  return out;
}

std::string print_literal(const Literal& l, const SymbolTable& symbols) {
  const std::string& pred = symbols.name(l.predicate());
  if (pred == "=" && l.args().size() == 2) {
    return print_term(l.args()[0], symbols) + (l.positive ? " = " : " != ") +
           print_term(l.args()[1], symbols);
  }
  std::string out = l.positive ? "" : "~";
  out += print_term(l.atom, symbols);
  return out;
}

std::string print_clause(const Clause& c, const SymbolTable& symbols) {
  if (c.literals.empty()) return "$false";
  struct Entry {
    bool negative;
    std::string pred;
    std::string args;
    std::string printed;
  };
  std::vector<Entry> entries;
  entries.reserve(c.literals.size());
  for (const Literal& l : c.literals) {
    Entry e;
    e.negative = !l.positive;
    e.pred = symbols.name(l.predicate());
    for (size_t i = 0; i < l.args().size(); ++i) {
      if (i) e.args += ',';
      e.args += print_term(l.args()[i], symbols);
    }
    e.printed = print_literal(l, symbols);
    entries.push_back(std::move(e));
  }
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.negative != b.negative) return !a.negative;
    if (a.pred != b.pred) return a.pred < b.pred;
    return a.args < b.args;
  });
  std::string out;
  for (size_t i = 0; i < entries.size(); ++i) {
    if (i) out += " | ";
    out += entries[i].printed;
  }
  return out;
}

}  // namespace prover
