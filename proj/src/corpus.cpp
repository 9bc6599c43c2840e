#include "prover/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

namespace prover {

Corpus Corpus::scan(const std::filesystem::path& root) {
  Corpus c;
  c.root = root;
  c.name = root.filename().string();
  if (!std::filesystem::is_directory(root))
    throw std::runtime_error("corpus directory does not exist: " + root.string());
  for (const auto& entry : std::filesystem::directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    auto ext = entry.path().extension();
    if (ext == ".p" || ext == ".cnf") c.problems.push_back(entry.path());
  }
  std::sort(c.problems.begin(), c.problems.end());
  if (c.problems.empty())
    throw std::runtime_error("corpus contains no .p/.cnf problems: " + root.string());
  return c;
}

const char* outcome_name(RunResult::Outcome o) {
  switch (o) {
    case RunResult::Outcome::Unsatisfiable: return "Unsatisfiable";
    case RunResult::Outcome::Saturated: return "Saturated";
    case RunResult::Outcome::ResourceOut: return "ResourceOut";
    case RunResult::Outcome::Error: return "Error";
  }
  return "Error";
}

RunResult::Outcome outcome_from_name(const std::string& s) {
  if (s == "Unsatisfiable") return RunResult::Outcome::Unsatisfiable;
  if (s == "Saturated") return RunResult::Outcome::Saturated;
  if (s == "ResourceOut") return RunResult::Outcome::ResourceOut;
  if (s == "Error") return RunResult::Outcome::Error;
  throw std::runtime_error("unknown run outcome '" + s + "'");
}

namespace {

RunResult run_one(const std::filesystem::path& path, const Strategy& s, const Limits& limits,
                  const std::filesystem::path& trace_dir) {
  RunResult r;
  r.problem = path.stem().string();
  try {
    Problem problem = parse_problem_file(path);
    SearchResult result = saturate(problem, s, limits);
    r.wall_time = result.stats.wall_seconds;
    r.given_count = result.stats.given_count;
    switch (result.verdict) {
      case Verdict::Unsatisfiable: r.verdict = RunResult::Outcome::Unsatisfiable; break;
      case Verdict::Saturated: r.verdict = RunResult::Outcome::Saturated; break;
      case Verdict::ResourceOut: r.verdict = RunResult::Outcome::ResourceOut; break;
    }
    if (result.verdict == Verdict::Unsatisfiable && !trace_dir.empty()) {
      std::filesystem::create_directories(trace_dir);
      std::filesystem::path trace_path = trace_dir / (r.problem + ".trace");
      std::ofstream out(trace_path);
      if (!out) throw std::runtime_error("cannot write trace: " + trace_path.string());
      write_trace(out, result, problem.symbols);
      r.trace_path = trace_path.string();
    }
  } catch (const std::exception& e) {
    r.verdict = RunResult::Outcome::Error;
    r.error = e.what();
  }
  return r;
}

}  // namespace

std::vector<RunResult> run_corpus(const Corpus& corpus, const Strategy& s, const Limits& limits,
                                  unsigned jobs, const std::filesystem::path& trace_dir) {
  s.validate(true);  // model-only strategies are the caller's choice here
  std::vector<RunResult> results(corpus.problems.size());
  if (jobs <= 1) {
    for (size_t i = 0; i < corpus.problems.size(); ++i)
      results[i] = run_one(corpus.problems[i], s, limits, trace_dir);
    return results;
  }
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= corpus.problems.size()) return;
      results[i] = run_one(corpus.problems[i], s, limits, trace_dir);
    }
  };
  std::vector<std::thread> pool;
  unsigned n = std::min<unsigned>(jobs, std::thread::hardware_concurrency() * 2 + 1);
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return results;
}

std::set<std::string> solved_problems(const std::vector<RunResult>& results) {
  std::set<std::string> out;
  for (const RunResult& r : results)
    if (r.verdict == RunResult::Outcome::Unsatisfiable) out.insert(r.problem);
  return out;
}

void write_results(const std::filesystem::path& path, const std::vector<RunResult>& results) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write results file: " + path.string());
  out << "problem\tverdict\twall_time\tgiven_count\ttrace_path\n";
  for (const RunResult& r : results) {
    out << r.problem << '\t' << outcome_name(r.verdict) << '\t' << r.wall_time << '\t'
        << r.given_count << '\t' << (r.trace_path.empty() ? "-" : r.trace_path) << '\n';
  }
}

std::vector<RunResult> read_results(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open results file: " + path.string());
  std::vector<RunResult> results;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::istringstream ss(line);
    RunResult r;
    std::string verdict, trace;
    if (!std::getline(ss, r.problem, '\t') || !std::getline(ss, verdict, '\t'))
      throw std::runtime_error("malformed results line: " + line);
    std::string field;
    if (!std::getline(ss, field, '\t')) throw std::runtime_error("malformed results line: " + line);
    r.wall_time = std::stod(field);
    if (!std::getline(ss, field, '\t')) throw std::runtime_error("malformed results line: " + line);
    r.given_count = std::stoull(field);
    if (!std::getline(ss, trace, '\t')) throw std::runtime_error("malformed results line: " + line);
    r.verdict = outcome_from_name(verdict);
    if (trace != "-") r.trace_path = trace;
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace prover
