#include "prover/gen.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

namespace prover {

namespace {

// Shared vocabulary across all generated problems, so learned guidance can
// transfer: q* predicates carry the implication chains, r* predicates are
// pure noise, v* atoms build the 3-CNF family, occ* the pigeonhole family.
constexpr int kChainPreds = 20;
constexpr int kNoisePreds = 14;
constexpr int kCnfAtoms = 12;

std::string q(int i) { return "q" + std::to_string(i); }
std::string r(int i) { return "r" + std::to_string(i); }
std::string v(int i) { return "v" + std::to_string(i); }

struct ClauseLine {
  std::string text;
  bool conjecture = false;
};

std::string render(const std::string& name, const std::vector<ClauseLine>& clauses,
                   const std::string& comment) {
  std::ostringstream out;
  out << "% " << comment << "\n";
  int i = 0;
  for (const ClauseLine& c : clauses) {
    out << "cnf(c" << i++ << ", " << (c.conjecture ? "negated_conjecture" : "axiom") << ", "
        << c.text << ").\n";
  }
  (void)name;
  return out.str();
}

int pick(std::mt19937_64& rng, int n) {
  return static_cast<int>(rng() % static_cast<uint64_t>(n));
}

/// Implication chain q_p0(a) -> ... -> q_pL(a) with the goal ~q_pL(a);
/// distractor edges/facts over the noise pool inflate the search space.
GeneratedProblem make_chain(std::mt19937_64& rng, int index, int length, int distractor_edges,
                            int distractor_facts, int soup_clauses, bool satisfiable) {
  std::vector<int> preds(kChainPreds);
  for (int i = 0; i < kChainPreds; ++i) preds[i] = i;
  std::shuffle(preds.begin(), preds.end(), rng);
  std::vector<ClauseLine> clauses;

  clauses.push_back({q(preds[0]) + "(a)", false});
  int dropped = satisfiable ? length / 2 : -1;  // break the path for sat instances
  for (int i = 0; i < length; ++i) {
    if (i == dropped) continue;
    clauses.push_back({"~" + q(preds[i]) + "(X) | " + q(preds[i + 1]) + "(X)", false});
  }

  for (int i = 0; i < distractor_edges; ++i) {
    int from = pick(rng, kNoisePreds);
    int to = pick(rng, kNoisePreds);
    clauses.push_back({"~" + r(from) + "(X) | " + r(to) + "(X)", false});
  }
  for (int i = 0; i < distractor_facts; ++i) {
    const char* consts[] = {"a", "b", "c"};
    clauses.push_back({r(pick(rng, kNoisePreds)) + "(" + consts[pick(rng, 3)] + ")", false});
  }
  for (int i = 0; i < soup_clauses; ++i) {
    // random 3-literal noise rules; these resolve among themselves and keep
    // an unguided search busy
    std::string lits;
    for (int k = 0; k < 3; ++k) {
      if (k) lits += " | ";
      if (pick(rng, 2)) lits += "~";
      lits += r(pick(rng, kNoisePreds)) + "(" + (pick(rng, 2) ? "X" : "b") + ")";
    }
    clauses.push_back({lits, false});
  }

  clauses.push_back({"~" + q(preds[length]) + "(a)", true});

  std::ostringstream name;
  name << "chain_" << std::setw(3) << std::setfill('0') << index;
  std::ostringstream comment;
  comment << "implication chain, length " << length << ", " << distractor_edges << "+"
          << distractor_facts << "+" << soup_clauses << " distractors, "
          << (satisfiable ? "broken path" : "full path");
  return {name.str(), render(name.str(), clauses, comment.str())};
}

GeneratedProblem make_3cnf(std::mt19937_64& rng, int index, int num_atoms) {
  int num_clauses = static_cast<int>(num_atoms * 4.3);
  std::vector<ClauseLine> clauses;
  for (int i = 0; i < num_clauses; ++i) {
    std::vector<int> atoms;
    while (atoms.size() < 3) {
      int a = pick(rng, num_atoms);
      if (std::find(atoms.begin(), atoms.end(), a) == atoms.end()) atoms.push_back(a);
    }
    std::string lits;
    for (size_t k = 0; k < atoms.size(); ++k) {
      if (k) lits += " | ";
      if (pick(rng, 2)) lits += "~";
      lits += v(atoms[k]);
    }
    clauses.push_back({lits, i + 1 == num_clauses});
  }
  std::ostringstream name;
  name << "cnf3_" << std::setw(3) << std::setfill('0') << index;
  return {name.str(), render(name.str(), clauses, "random 3-CNF near threshold, " +
                                                      std::to_string(num_atoms) + " atoms")};
}

GeneratedProblem make_pigeonhole(int index, int pigeons, int holes) {
  std::vector<ClauseLine> clauses;
  auto occ = [](int p, int h) { return "occ" + std::to_string(p) + "_" + std::to_string(h); };
  for (int p = 0; p < pigeons; ++p) {
    std::string lits;
    for (int h = 0; h < holes; ++h) {
      if (h) lits += " | ";
      lits += occ(p, h);
    }
    clauses.push_back({lits, p == 0});
  }
  for (int h = 0; h < holes; ++h)
    for (int p1 = 0; p1 < pigeons; ++p1)
      for (int p2 = p1 + 1; p2 < pigeons; ++p2)
        clauses.push_back({"~" + occ(p1, h) + " | ~" + occ(p2, h), false});
  std::ostringstream name;
  name << "php_" << std::setw(3) << std::setfill('0') << index;
  return {name.str(), render(name.str(), clauses,
                             "pigeonhole " + std::to_string(pigeons) + " into " +
                                 std::to_string(holes))};
}

}  // namespace

std::vector<GeneratedProblem> generate_corpus(size_t count, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<GeneratedProblem> problems;
  problems.reserve(count);

  size_t chains = count * 3 / 5;
  size_t cnfs = count / 4;
  size_t phps = count - chains - cnfs;

  for (size_t i = 0; i < chains; ++i) {
    // thirds: easy, medium (solvable unguided), hard (needs guidance)
    int tier = static_cast<int>(i % 3);
    int length, edges, facts, soup;
    switch (tier) {
      case 0: length = 2 + pick(rng, 3); edges = 2; facts = 1; soup = 0; break;
      case 1: length = 4 + pick(rng, 3); edges = 8; facts = 4; soup = 2; break;
      default: length = 6 + pick(rng, 5); edges = 16; facts = 8; soup = 8; break;
    }
    bool satisfiable = i % 5 == 4;  // every fifth chain has a broken path
    problems.push_back(make_chain(rng, static_cast<int>(i), length, edges, facts, soup,
                                  satisfiable));
  }
  for (size_t i = 0; i < cnfs; ++i)
    problems.push_back(make_3cnf(rng, static_cast<int>(i), 5 + pick(rng, 5)));
  for (size_t i = 0; i < phps; ++i) {
    static const std::pair<int, int> shapes[] = {{2, 1}, {3, 2}, {4, 3}, {2, 2}, {3, 3}};
    auto [p, h] = shapes[i % 5];
    problems.push_back(make_pigeonhole(static_cast<int>(i), p, h));
  }
  return problems;
}

size_t write_corpus(const std::filesystem::path& dir, size_t count, uint64_t seed) {
  std::filesystem::create_directories(dir);
  auto problems = generate_corpus(count, seed);
  for (const GeneratedProblem& p : problems) {
    std::ofstream out(dir / (p.name + ".p"));
    if (!out) throw std::runtime_error("cannot write problem file: " + (dir / p.name).string());
    out << p.text;
  }
  return problems.size();
}

}  // namespace prover
