#include "prover/strategy.hpp"

#include <stdexcept>

namespace prover {

WeightFunctionSpec WeightFunctionSpec::symbol_count(uint32_t f, uint32_t v) {
  WeightFunctionSpec s;
  s.kind = Kind::SymbolCount;
  s.fweight = f;
  s.vweight = v;
  return s;
}

WeightFunctionSpec WeightFunctionSpec::age() {
  WeightFunctionSpec s;
  s.kind = Kind::Age;
  return s;
}

WeightFunctionSpec WeightFunctionSpec::conjecture_overlap(int32_t bonus) {
  WeightFunctionSpec s;
  s.kind = Kind::ConjectureOverlap;
  s.bonus = bonus;
  return s;
}

WeightFunctionSpec WeightFunctionSpec::model_queue(const Ensemble* m, bool scaled) {
  WeightFunctionSpec s;
  s.kind = Kind::Model;
  s.model = m;
  s.scaled_weight = scaled;
  return s;
}

uint64_t Strategy::total_frequency() const {
  uint64_t total = 0;
  for (const auto& q : queues) total += q.frequency;
  return total;
}

bool Strategy::has_age_queue() const {
  for (const auto& q : queues)
    if (q.spec.kind == WeightFunctionSpec::Kind::Age && q.frequency >= 1) return true;
  return false;
}

void Strategy::validate(bool allow_no_age) const {
  if (queues.empty()) throw std::invalid_argument("strategy has no queues");
  for (const auto& q : queues) {
    if (q.frequency == 0) throw std::invalid_argument("queue frequency must be positive");
    if (q.spec.kind == WeightFunctionSpec::Kind::Model && q.spec.model == nullptr)
      throw std::invalid_argument("model queue requires a loaded ensemble");
  }
  if (!allow_no_age && !has_age_queue())
    throw std::invalid_argument("strategy requires an age queue with frequency >= 1 (fairness)");
}

size_t next_queue(RoundRobinState& state, const Strategy& s) {
  uint64_t total = s.total_frequency();
  uint64_t slot = state.position % total;
  state.position = (state.position + 1) % total;
  for (size_t i = 0; i < s.queues.size(); ++i) {
    if (slot < s.queues[i].frequency) return i;
    slot -= s.queues[i].frequency;
  }
  return s.queues.size() - 1;  // unreachable for valid strategies
}

namespace {

[[noreturn]] void bad_spec(const std::string& text, const std::string& why) {
  throw std::invalid_argument("bad strategy spec '" + text + "': " + why);
}

// Splits on commas that are not inside parentheses.
std::vector<std::string> split_queues(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  size_t b = s.find_last_not_of(" \t");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

std::vector<long> parse_args(const std::string& text, const std::string& inner) {
  std::vector<long> args;
  std::string cur;
  for (char c : inner + ",") {
    if (c == ',') {
      std::string token = strip(cur);
      if (token.empty()) bad_spec(text, "empty argument");
      try {
        args.push_back(std::stol(token));
      } catch (const std::exception&) {
        bad_spec(text, "non-numeric argument '" + token + "'");
      }
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  return args;
}

}  // namespace

Strategy parse_strategy(const std::string& text) {
  Strategy s;
  s.queues.clear();
  for (const std::string& raw : split_queues(text)) {
    std::string part = strip(raw);
    if (part.empty()) bad_spec(text, "empty queue entry");
    size_t star = part.find('*');
    if (star == std::string::npos) bad_spec(text, "missing 'freq*' prefix in '" + part + "'");
    uint32_t freq = 0;
    try {
      long f = std::stol(strip(part.substr(0, star)));
      if (f <= 0) bad_spec(text, "frequency must be positive");
      freq = static_cast<uint32_t>(f);
    } catch (const std::invalid_argument&) {
      bad_spec(text, "bad frequency in '" + part + "'");
    }
    std::string rest = strip(part.substr(star + 1));
    std::string kind = rest;
    std::vector<long> args;
    size_t paren = rest.find('(');
    if (paren != std::string::npos) {
      if (rest.back() != ')') bad_spec(text, "unbalanced parentheses in '" + part + "'");
      kind = strip(rest.substr(0, paren));
      args = parse_args(text, rest.substr(paren + 1, rest.size() - paren - 2));
    }
    if (kind == "Age") {
      if (!args.empty()) bad_spec(text, "Age takes no arguments");
      s.queues.push_back({freq, WeightFunctionSpec::age()});
    } else if (kind == "SymbolCount") {
      if (args.size() != 2 || args[0] <= 0 || args[1] <= 0)
        bad_spec(text, "SymbolCount needs two positive arguments");
      s.queues.push_back({freq, WeightFunctionSpec::symbol_count(
                                    static_cast<uint32_t>(args[0]),
                                    static_cast<uint32_t>(args[1]))});
    } else if (kind == "ConjectureOverlap") {
      if (args.size() != 1) bad_spec(text, "ConjectureOverlap needs one argument");
      s.queues.push_back(
          {freq, WeightFunctionSpec::conjecture_overlap(static_cast<int32_t>(args[0]))});
    } else {
      bad_spec(text, "unknown weight function '" + kind + "'");
    }
  }
  return s;
}

std::string strategy_to_string(const Strategy& s) {
  std::string out;
  for (size_t i = 0; i < s.queues.size(); ++i) {
    if (i) out += ',';
    const auto& q = s.queues[i];
    out += std::to_string(q.frequency) + "*";
    switch (q.spec.kind) {
      case WeightFunctionSpec::Kind::Age:
        out += "Age";
        break;
      case WeightFunctionSpec::Kind::SymbolCount:
        out += "SymbolCount(" + std::to_string(q.spec.fweight) + "," +
               std::to_string(q.spec.vweight) + ")";
        break;
      case WeightFunctionSpec::Kind::ConjectureOverlap:
        out += "ConjectureOverlap(" + std::to_string(q.spec.bonus) + ")";
        break;
      case WeightFunctionSpec::Kind::Model:
        out += "Model";
        break;
    }
  }
  return out;
}

Strategy default_base_strategy() {
  Strategy s;
  s.name = "S";
  s.queues = {{2, WeightFunctionSpec::symbol_count(2, 1)},
              {1, WeightFunctionSpec::age()},
              {1, WeightFunctionSpec::conjecture_overlap(-1)}};
  return s;
}

Strategy compose_solo(const Strategy& s, const Ensemble& m, bool pure, bool scaled) {
  Strategy out = s;  // inherit everything but the queues
  out.name = s.name + (pure ? ".pure-solo" : ".solo");
  out.queues = {{1, WeightFunctionSpec::model_queue(&m, scaled)}};
  if (!pure) out.queues.push_back({1, WeightFunctionSpec::age()});
  return out;
}

Strategy compose_combined(const Strategy& s, const Ensemble& m, bool scaled) {
  Strategy out = s;
  out.name = s.name + ".combined";
  uint64_t total = s.total_frequency();
  out.queues.push_back(
      {static_cast<uint32_t>(total), WeightFunctionSpec::model_queue(&m, scaled)});
  return out;
}

}  // namespace prover
