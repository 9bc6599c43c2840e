#include "prover/saturation.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <queue>
#include <sstream>
#include <unordered_set>

#include "prover/redundancy.hpp"
#include "prover/substitution.hpp"

namespace prover {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Unsatisfiable: return "Unsatisfiable";
    case Verdict::Saturated: return "Saturated";
    case Verdict::ResourceOut: return "ResourceOut";
  }
  return "ResourceOut";
}

const char* rule_name(InferenceRecord::Rule r) {
  switch (r) {
    case InferenceRecord::Rule::Input: return "input";
    case InferenceRecord::Rule::Resolution: return "resolution";
    case InferenceRecord::Rule::Factoring: return "factoring";
  }
  return "input";
}

std::vector<Clause> ProofTrace::conjecture_clauses() const {
  std::vector<Clause> out;
  for (const TraceEntry& e : entries)
    if (e.record.rule == InferenceRecord::Rule::Input && e.role == Role::NegatedConjecture)
      out.push_back(e.clause);
  return out;
}

std::vector<Clause> resolvents(const Clause& g, const Clause& p) {
  std::vector<Clause> out;
  for (size_t i = 0; i < g.literals.size(); ++i) {
    const Literal& lg = g.literals[i];
    for (size_t j = 0; j < p.literals.size(); ++j) {
      const Literal& lp = p.literals[j];
      if (lg.positive == lp.positive || lg.predicate() != lp.predicate()) continue;
      auto sigma = unify(lg.atom, lp.atom);
      if (!sigma) continue;
      Clause r;
      r.origin = ClauseOrigin::Derived;
      r.literals.reserve(g.literals.size() + p.literals.size() - 2);
      for (size_t k = 0; k < g.literals.size(); ++k)
        if (k != i) r.literals.push_back(sigma->apply(g.literals[k]));
      for (size_t k = 0; k < p.literals.size(); ++k)
        if (k != j) r.literals.push_back(sigma->apply(p.literals[k]));
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<Clause> factors(const Clause& g) {
  std::vector<Clause> out;
  for (size_t i = 0; i < g.literals.size(); ++i) {
    for (size_t j = i + 1; j < g.literals.size(); ++j) {
      const Literal& a = g.literals[i];
      const Literal& b = g.literals[j];
      if (a.positive != b.positive || a.predicate() != b.predicate()) continue;
      auto sigma = unify(a.atom, b.atom);
      if (!sigma) continue;
      Clause f;
      f.origin = ClauseOrigin::Derived;
      f.literals.reserve(g.literals.size() - 1);
      for (size_t k = 0; k < g.literals.size(); ++k)
        if (k != j) f.literals.push_back(sigma->apply(g.literals[k]));
      out.push_back(std::move(f));
    }
  }
  return out;
}

bool forward_keep(const Clause& c, const std::vector<const Clause*>& processed) {
  if (is_tautology(c)) return false;
  for (const Clause* p : processed)
    if (subsumes(*p, c)) return false;
  return true;
}

std::set<ClauseId> extract_proof(const ProofTrace& trace, ClauseId empty_id) {
  if (empty_id >= trace.entries.size())
    throw std::out_of_range("clause id not in trace: " + std::to_string(empty_id));
  std::set<ClauseId> closure;
  std::vector<ClauseId> stack{empty_id};
  while (!stack.empty()) {
    ClauseId id = stack.back();
    stack.pop_back();
    if (!closure.insert(id).second) continue;
    for (ClauseId parent : trace.entries.at(id).record.parents) stack.push_back(parent);
  }
  return closure;
}

LabeledExamples label_examples(const ProofTrace& trace, const std::set<ClauseId>& proof_ids) {
  LabeledExamples out;
  std::vector<Clause> conjecture = trace.conjecture_clauses();
  for (const TraceEntry& e : trace.entries) {
    if (!e.was_processed) continue;
    TrainingExample ex;
    ex.clause = e.clause;
    ex.conjecture_context = conjecture;
    ex.positive = proof_ids.count(e.id) > 0;
    ex.problem = trace.problem;
    (ex.positive ? out.positives : out.negatives).push_back(std::move(ex));
  }
  return out;
}

namespace {

struct QueueItem {
  double weight;
  uint32_t age;
  ClauseId id;

  bool operator>(const QueueItem& o) const {
    if (weight != o.weight) return weight > o.weight;
    if (age != o.age) return age > o.age;
    return id > o.id;
  }
};

using MinQueue = std::priority_queue<QueueItem, std::vector<QueueItem>, std::greater<QueueItem>>;

// Distinct function/predicate symbols of the clause.
std::unordered_set<SymbolId> clause_symbols(const Clause& c) {
  std::unordered_set<SymbolId> out;
  std::function<void(const Term&)> walk = [&](const Term& t) {
    if (t.is_var()) return;
    out.insert(t.functor());
    for (const Term& a : t.args()) walk(a);
  };
  for (const Literal& l : c.literals) walk(l.atom);
  return out;
}

class SaturationRun {
public:
  SaturationRun(const Problem& problem, const Strategy& strategy, const Limits& limits)
      : problem_(problem), strategy_(strategy), limits_(limits) {
    result_.trace.problem = problem.name;
    result_.stats.queue_picks.assign(strategy.queues.size(), 0);
    queues_.resize(strategy.queues.size());

    std::vector<Clause> conjecture = problem.conjecture_clauses();
    for (const Clause& c : conjecture)
      for (SymbolId s : clause_symbols(c)) conjecture_symbols_.insert(s);
    for (const auto& q : strategy.queues) {
      if (q.spec.kind == WeightFunctionSpec::Kind::Model) {
        const EnsembleMeta& meta = q.spec.model->meta;
        FeatureConfig cfg;
        cfg.hash.base = meta.hash_base;
        cfg.conjecture_embedding = meta.num_features == 2 * meta.hash_base;
        extractor_.emplace(std::span<const Clause>(conjecture), problem.symbols, cfg);
        break;
      }
    }

    VarId max_var = 0;
    for (const auto& [c, role] : problem.clauses)
      for (VarId v : clause_vars(c)) max_var = std::max(max_var, v + 1);
    counter_ = FreshVarCounter(max_var);
  }

  SearchResult run() {
    start_ = std::chrono::steady_clock::now();
    for (const auto& [c, role] : problem_.clauses) {
      // Input tautologies stay in the trace but never enter U.
      record_clause(c, role, InferenceRecord{InferenceRecord::Rule::Input, {}},
                    !is_tautology(c));
      if (done_) return finish();
    }
    RoundRobinState rr;
    while (!unprocessed_.empty()) {
      if (limits_.max_processed && result_.stats.given_count >= limits_.max_processed)
        return out_of_resources();
      if (wall_exceeded()) return out_of_resources();

      size_t qi = next_queue(rr, strategy_);
      ClauseId given = pop_queue(qi);
      result_.stats.queue_picks[qi]++;
      result_.stats.given_count++;
      result_.trace.entries[given].was_processed = true;
      processed_.push_back(given);

      const Clause g = result_.trace.entries[given].clause;  // copy: entries may grow
      for (Clause& f : factors(g)) {
        derived(std::move(f), InferenceRecord{InferenceRecord::Rule::Factoring, {given}});
        if (done_) return finish();
      }
      for (size_t pi = 0; pi < processed_.size() && !done_; ++pi) {
        ClauseId pid = processed_[pi];
        Clause partner = rename_apart(result_.trace.entries[pid].clause, counter_);
        for (Clause& r : resolvents(g, partner)) {
          derived(std::move(r), InferenceRecord{InferenceRecord::Rule::Resolution, {given, pid}});
          if (done_) break;
        }
        if ((result_.stats.generated_count & 0x3FF) == 0 && wall_exceeded())
          return out_of_resources();
      }
      if (done_) return finish();
      if (limit_hit_) return out_of_resources();
    }
    result_.verdict = Verdict::Saturated;
    return finish();
  }

private:
  bool wall_exceeded() const {
    if (limits_.wall_seconds <= 0.0) return false;
    auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_);
    return elapsed.count() > limits_.wall_seconds;
  }

  SearchResult out_of_resources() {
    result_.verdict = Verdict::ResourceOut;
    return finish();
  }

  SearchResult finish() {
    result_.stats.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return std::move(result_);
  }

  ClauseId pop_queue(size_t qi) {
    MinQueue& q = queues_[qi];
    // Stale items (already selected via another queue) are skipped lazily.
    while (!q.empty()) {
      QueueItem item = q.top();
      q.pop();
      if (unprocessed_.erase(item.id)) return item.id;
    }
    throw std::logic_error("strategy queue exhausted while U is non-empty");
  }

  double queue_weight(const WeightFunctionSpec& spec, const Clause& c) const {
    switch (spec.kind) {
      case WeightFunctionSpec::Kind::Age:
        return static_cast<double>(c.age);
      case WeightFunctionSpec::Kind::SymbolCount:
        return static_cast<double>(clause_symbol_weight(c, spec.fweight, spec.vweight));
      case WeightFunctionSpec::Kind::ConjectureOverlap: {
        double w = static_cast<double>(clause_symbol_weight(c, 1, 1));
        int64_t shared = 0;
        for (SymbolId s : clause_symbols(c)) shared += conjecture_symbols_.count(s);
        return w + static_cast<double>(spec.bonus) * static_cast<double>(shared);
      }
      case WeightFunctionSpec::Kind::Model: {
        double prob = spec.model->probability(extractor_->vectorize(c));
        return spec.scaled_weight ? clause_weight_scaled(prob) : clause_weight(prob);
      }
    }
    return 0.0;
  }

  // Assigns the next id/age, appends the trace entry, and inserts into U
  // unless the clause is the contradiction (which ends the search).
  void record_clause(const Clause& c, Role role, InferenceRecord record, bool insert_into_u) {
    ClauseId id = static_cast<ClauseId>(result_.trace.entries.size());
    Clause stored = c;
    stored.id = id;
    stored.age = id;
    TraceEntry entry{id, std::move(stored), role, std::move(record), false};
    result_.trace.entries.push_back(std::move(entry));
    const Clause& placed = result_.trace.entries.back().clause;
    if (placed.empty()) {
      result_.verdict = Verdict::Unsatisfiable;
      result_.proof = extract_proof(result_.trace, id);
      done_ = true;
      return;
    }
    if (!insert_into_u) return;
    unprocessed_.insert(id);
    for (size_t qi = 0; qi < strategy_.queues.size(); ++qi)
      queues_[qi].push({queue_weight(strategy_.queues[qi].spec, placed), placed.age, id});
  }

  void derived(Clause&& c, InferenceRecord record) {
    if (limit_hit_) return;
    result_.stats.generated_count++;
    if (c.empty()) {
      record_clause(c, Role::Axiom, std::move(record), true);
      return;  // done_ set by record_clause
    }
    if (limits_.max_generated && result_.stats.generated_count >= limits_.max_generated) {
      limit_hit_ = true;
      return;
    }
    if (is_tautology(c)) return;
    for (ClauseId pid : processed_)
      if (subsumes(result_.trace.entries[pid].clause, c)) return;
    record_clause(c, Role::Axiom, std::move(record), true);
  }

  const Problem& problem_;
  const Strategy& strategy_;
  const Limits& limits_;

  SearchResult result_;
  std::vector<MinQueue> queues_;
  std::unordered_set<ClauseId> unprocessed_;
  std::vector<ClauseId> processed_;
  std::unordered_set<SymbolId> conjecture_symbols_;
  std::optional<FeatureExtractor> extractor_;
  FreshVarCounter counter_{0};
  std::chrono::steady_clock::time_point start_;
  bool done_ = false;
  bool limit_hit_ = false;
};

}  // namespace

SearchResult saturate(const Problem& p, const Strategy& s, const Limits& limits,
                      bool allow_unfair_strategy) {
  s.validate(allow_unfair_strategy);
  SaturationRun run(p, s, limits);
  return run.run();
}

namespace {

const char* szs_name(Verdict v) {
  switch (v) {
    case Verdict::Unsatisfiable: return "Unsatisfiable";
    case Verdict::Saturated: return "Satisfiable";
    case Verdict::ResourceOut: return "ResourceOut";
  }
  return "ResourceOut";
}

Verdict verdict_from_szs(const std::string& s) {
  if (s == "Unsatisfiable") return Verdict::Unsatisfiable;
  if (s == "Satisfiable") return Verdict::Saturated;
  if (s == "ResourceOut") return Verdict::ResourceOut;
  throw std::runtime_error("unknown SZS status '" + s + "'");
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == '\t') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

void write_trace(std::ostream& out, const SearchResult& result, const SymbolTable& symbols) {
  for (const TraceEntry& e : result.trace.entries) {
    bool input = e.record.rule == InferenceRecord::Rule::Input;
    out << e.id << '\t' << (input ? role_name(e.role) : "derived") << '\t'
        << rule_name(e.record.rule) << '\t';
    if (e.record.parents.empty()) {
      out << '-';
    } else {
      for (size_t i = 0; i < e.record.parents.size(); ++i) {
        if (i) out << ',';
        out << e.record.parents[i];
      }
    }
    out << '\t' << (e.was_processed ? 1 : 0) << '\t' << print_clause(e.clause, symbols) << '\n';
  }
  out << "SZS status " << szs_name(result.verdict) << '\n';
}

LoadedTrace read_trace(std::istream& in, const std::string& problem_name) {
  LoadedTrace loaded;
  loaded.trace.problem = problem_name;
  std::string line;
  bool saw_status = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("SZS status ", 0) == 0) {
      loaded.verdict = verdict_from_szs(line.substr(11));
      saw_status = true;
      continue;
    }
    auto fields = split_tabs(line);
    if (fields.size() != 6) throw std::runtime_error("malformed trace line: " + line);
    TraceEntry e;
    e.id = static_cast<ClauseId>(std::stoul(fields[0]));
    if (e.id != loaded.trace.entries.size())
      throw std::runtime_error("non-contiguous clause ids in trace");
    std::string role = fields[1];
    std::string rule = fields[2];
    if (rule == "input") {
      e.record.rule = InferenceRecord::Rule::Input;
      e.role = role_from_name(role);
    } else if (rule == "resolution") {
      e.record.rule = InferenceRecord::Rule::Resolution;
    } else if (rule == "factoring") {
      e.record.rule = InferenceRecord::Rule::Factoring;
    } else {
      throw std::runtime_error("unknown inference rule '" + rule + "'");
    }
    if (fields[3] != "-") {
      std::stringstream ss(fields[3]);
      std::string tok;
      while (std::getline(ss, tok, ','))
        e.record.parents.push_back(static_cast<ClauseId>(std::stoul(tok)));
    }
    e.was_processed = fields[4] == "1";
    e.clause = parse_clause_text(fields[5], loaded.symbols);
    e.clause.id = e.id;
    e.clause.age = e.id;
    e.clause.origin = e.record.rule == InferenceRecord::Rule::Input ? ClauseOrigin::Input
                                                                    : ClauseOrigin::Derived;
    loaded.trace.entries.push_back(std::move(e));
  }
  if (!saw_status) throw std::runtime_error("trace is missing the SZS status line");
  return loaded;
}

LoadedTrace read_trace_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file: " + path.string());
  return read_trace(in, path.stem().string());
}

}  // namespace prover
