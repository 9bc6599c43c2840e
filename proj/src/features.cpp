#include "prover/features.hpp"

#include <algorithm>

namespace prover {

namespace {

constexpr const char* kPad = "\xE2\x96\xA1";  // terminal marker for short walks
constexpr const char* kVar = "*";             // variable placeholder

const std::string& node_label(const Term& t, const SymbolTable& symbols,
                              std::string& var_buf) {
  if (t.is_var()) {
    var_buf = kVar;
    return var_buf;
  }
  return symbols.name(t.functor());
}

}  // namespace

uint64_t sdbm(std::string_view bytes) {
  uint64_t h = 0;
  for (unsigned char c : bytes)
    h = static_cast<uint64_t>(c) + (h << 6) + (h << 16) - h;
  return h;
}

double SparseVector::get(uint32_t index) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), index,
                             [](const auto& e, uint32_t i) { return e.first < i; });
  return (it != entries.end() && it->first == index) ? it->second : 0.0;
}

void SparseVector::add(uint32_t index, double value) {
  auto it = std::lower_bound(entries.begin(), entries.end(), index,
                             [](const auto& e, uint32_t i) { return e.first < i; });
  if (it != entries.end() && it->first == index) {
    it->second += value;
  } else {
    entries.insert(it, {index, value});
  }
}

std::vector<std::string> term_walk_features(const Clause& c, const SymbolTable& symbols) {
  std::vector<std::string> keys;
  std::string b1, b2;
  for (const Literal& lit : c.literals) {
    std::string root = (lit.positive ? "" : "~") + symbols.name(lit.predicate());
    const auto& args = lit.args();
    if (args.empty()) {
      keys.push_back("V:" + root + "/" + kPad + "/" + kPad);
      continue;
    }
    for (const Term& child : args) {
      const std::string& l2 = node_label(child, symbols, b1);
      if (child.is_var() || child.args().empty()) {
        keys.push_back("V:" + root + "/" + l2 + "/" + kPad);
        continue;
      }
      for (const Term& grandchild : child.args()) {
        const std::string& l3 = node_label(grandchild, symbols, b2);
        keys.push_back("V:" + root + "/" + l2 + "/" + l3);
      }
    }
  }
  return keys;
}

std::vector<std::pair<std::string, uint64_t>> count_features(const Clause& c) {
  uint64_t len = c.literals.size();
  uint64_t pos = 0, neg = 0, vars = 0;
  uint64_t depth = 0;
  for (const Literal& l : c.literals) {
    (l.positive ? pos : neg)++;
    for (const Term& a : l.atom.args()) depth = std::max<uint64_t>(depth, term_depth(a));
  }
  // variable occurrences, not distinct variables
  struct Counter {
    static void run(const Term& t, uint64_t& n) {
      if (t.is_var()) {
        ++n;
        return;
      }
      for (const Term& a : t.args()) run(a, n);
    }
  };
  for (const Literal& l : c.literals) Counter::run(l.atom, vars);

  std::vector<std::pair<std::string, uint64_t>> out;
  auto push = [&out](const char* key, uint64_t v) {
    if (v > 0) out.emplace_back(key, v);
  };
  push("C:len", len);
  push("C:pos", pos);
  push("C:neg", neg);
  push("C:depth", depth);
  push("C:vars", vars);
  return out;
}

std::map<std::string, uint64_t> feature_counts(const Clause& c, const SymbolTable& symbols,
                                               const FeatureConfig& cfg) {
  std::map<std::string, uint64_t> counts;
  for (std::string& key : term_walk_features(c, symbols)) counts[std::move(key)]++;
  if (cfg.count_features_enabled)
    for (auto& [key, value] : count_features(c)) counts[key] += value;
  return counts;
}

namespace {

std::map<uint32_t, double> fold_counts(const std::map<std::string, uint64_t>& counts,
                                       const HashSpec& hash) {
  std::map<uint32_t, double> folded;
  for (const auto& [key, value] : counts)
    folded[hash.index_of(key)] += static_cast<double>(value);
  return folded;
}

}  // namespace

SparseVector clause_block(const Clause& c, const SymbolTable& symbols, const FeatureConfig& cfg) {
  SparseVector v;
  v.dimension = cfg.hash.base;
  for (const auto& [index, value] : fold_counts(feature_counts(c, symbols, cfg), cfg.hash))
    v.entries.emplace_back(index, value);
  return v;
}

SparseVector clause_vector(const Clause& c, std::span<const Clause> conjecture,
                           const SymbolTable& symbols, const FeatureConfig& cfg) {
  FeatureExtractor extractor(conjecture, symbols, cfg);
  return extractor.vectorize(c);
}

FeatureExtractor::FeatureExtractor(std::span<const Clause> conjecture,
                                   const SymbolTable& symbols, const FeatureConfig& cfg)
    : symbols_(symbols), cfg_(cfg) {
  if (!cfg_.conjecture_embedding) return;
  std::map<std::string, uint64_t> merged;
  for (const Clause& c : conjecture)
    for (const auto& [key, value] : feature_counts(c, symbols_, cfg_)) merged[key] += value;
  for (const auto& [index, value] : fold_counts(merged, cfg_.hash))
    conjecture_entries_.emplace_back(index + cfg_.hash.base, value);
}

SparseVector FeatureExtractor::vectorize(const Clause& c) const {
  SparseVector v = clause_block(c, symbols_, cfg_);
  v.dimension = cfg_.dimension();
  // Block ranges are disjoint, so appending keeps entries sorted.
  v.entries.insert(v.entries.end(), conjecture_entries_.begin(), conjecture_entries_.end());
  return v;
}

}  // namespace prover
