#include "prover/loop.hpp"

#include <fstream>
#include <unordered_set>

#include "prover/libsvm.hpp"

namespace prover {

namespace {

std::filesystem::path ensure_dir(const std::filesystem::path& p) {
  std::filesystem::create_directories(p);
  return p;
}

bool stage_done(const std::filesystem::path& workdir, const std::string& stage) {
  return std::filesystem::exists(workdir / "state" / (stage + ".done"));
}

void mark_done(const std::filesystem::path& workdir, const std::string& stage) {
  ensure_dir(workdir / "state");
  std::ofstream out(workdir / "state" / (stage + ".done"));
  out << "ok\n";
}

ClauseId find_empty_clause(const ProofTrace& trace) {
  for (const TraceEntry& e : trace.entries)
    if (e.clause.empty()) return e.id;
  throw std::runtime_error("trace of a solved problem has no empty clause: " + trace.problem);
}

}  // namespace

size_t accumulate_training(const std::vector<const std::vector<RunResult>*>& runs,
                           const FeatureConfig& cfg, const std::filesystem::path& out_data,
                           double negative_sample) {
  std::ofstream out(out_data);
  if (!out) throw std::runtime_error("cannot write training data: " + out_data.string());

  std::unordered_set<std::string> seen;  // exact (vector, label) dedup
  size_t written = 0;
  for (const auto* run : runs) {
    for (const RunResult& r : *run) {
      if (r.verdict != RunResult::Outcome::Unsatisfiable || r.trace_path.empty()) continue;
      LoadedTrace loaded = read_trace_file(r.trace_path);
      if (loaded.verdict != Verdict::Unsatisfiable) continue;
      auto proof = extract_proof(loaded.trace, find_empty_clause(loaded.trace));
      LabeledExamples labeled = label_examples(loaded.trace, proof);

      std::vector<Clause> conjecture = loaded.trace.conjecture_clauses();
      FeatureExtractor extractor(conjecture, loaded.symbols, cfg);
      auto emit = [&](const TrainingExample& ex) {
        Example e;
        e.vector = extractor.vectorize(ex.clause);
        e.label = ex.positive ? 1 : 0;
        std::string line = format_example_line(e);
        if (!ex.positive && negative_sample < 1.0) {
          // deterministic content-based subsampling
          double u = static_cast<double>(sdbm(line) % 1000000) / 1000000.0;
          if (u >= negative_sample) return;
        }
        if (seen.insert(line).second) {
          out << line << '\n';
          ++written;
        }
      };
      for (const TrainingExample& ex : labeled.positives) emit(ex);
      for (const TrainingExample& ex : labeled.negatives) emit(ex);
    }
  }
  if (written == 0) throw std::runtime_error("no training data: no run solved any problem");

  DataMeta meta;
  meta.hash_base = cfg.hash.base;
  meta.walk_length = FeatureConfig::kWalkLength;
  meta.count_features = cfg.count_features_enabled;
  meta.conjecture_embedding = cfg.conjecture_embedding;
  write_data_meta(meta_path_for(out_data), meta);
  return written;
}

LoopOutcome run_loop(const LoopConfig& cfg) {
  cfg.base_strategy.validate();
  Corpus corpus = Corpus::scan(cfg.corpus_dir);
  const auto& wd = cfg.workdir;
  ensure_dir(wd / "traces");
  ensure_dir(wd / "data");
  ensure_dir(wd / "models");
  ensure_dir(wd / "reports");
  ensure_dir(wd / "runs");

  LoopOutcome out;

  std::filesystem::path base_results = wd / "runs" / "base_S.tsv";
  if (stage_done(wd, "base")) {
    out.base_runs = read_results(base_results);
  } else {
    out.base_runs = run_corpus(corpus, cfg.base_strategy, cfg.limits, cfg.jobs,
                               wd / "traces" / "base" / "S");
    write_results(base_results, out.base_runs);
    mark_done(wd, "base");
  }

  std::set<std::string> cumulative = solved_problems(out.base_runs);
  out.iterations.reserve(cfg.iterations);  // history keeps pointers into it
  std::vector<const std::vector<RunResult>*> history{&out.base_runs};

  for (uint32_t n = 0; n < cfg.iterations; ++n) {
    std::string stage = "iter" + std::to_string(n);
    IterationRecord record;
    record.index = n;
    record.model_path = wd / "models" / (stage + ".json");
    std::filesystem::path solo_results = wd / "runs" / (stage + "_solo.tsv");
    std::filesystem::path combined_results = wd / "runs" / (stage + "_combined.tsv");

    if (stage_done(wd, stage)) {
      record.solo_runs = read_results(solo_results);
      record.combined_runs = read_results(combined_results);
    } else {
      std::filesystem::path data_path = wd / "data" / (stage + ".libsvm");
      accumulate_training(history, cfg.features, data_path);
      std::vector<Example> examples = read_examples_file(data_path, cfg.features.dimension());
      auto [model, train_report] = train(examples, cfg.train_params);
      model.meta.hash_base = cfg.features.hash.base;
      save_model(model, record.model_path);

      Ensemble loaded = load_model(record.model_path);
      Strategy solo = compose_solo(cfg.base_strategy, loaded, cfg.pure_solo);
      Strategy combined = compose_combined(cfg.base_strategy, loaded);
      record.solo_runs = run_corpus(corpus, solo, cfg.limits, cfg.jobs,
                                    wd / "traces" / stage / "solo");
      write_results(solo_results, record.solo_runs);
      record.combined_runs = run_corpus(corpus, combined, cfg.limits, cfg.jobs,
                                        wd / "traces" / stage / "combined");
      write_results(combined_results, record.combined_runs);

      DeltaReport solo_delta = report_delta(out.base_runs, record.solo_runs);
      DeltaReport combined_delta = report_delta(out.base_runs, record.combined_runs);
      std::ofstream report(wd / "reports" / (stage + ".tsv"));
      if (!report) throw std::runtime_error("cannot write report for " + stage);
      DeltaReport base_delta = report_delta(out.base_runs, out.base_runs);
      report << kReportHeader << '\n'
             << format_report_row(cfg.base_strategy.name, base_delta) << '\n'
             << format_report_row(cfg.base_strategy.name + ".solo", solo_delta) << '\n'
             << format_report_row(cfg.base_strategy.name + ".combined", combined_delta) << '\n';
      mark_done(wd, stage);
    }

    record.solo_delta = report_delta(out.base_runs, record.solo_runs);
    record.combined_delta = report_delta(out.base_runs, record.combined_runs);
    for (const std::string& p : solved_problems(record.solo_runs)) cumulative.insert(p);
    for (const std::string& p : solved_problems(record.combined_runs)) cumulative.insert(p);
    record.cumulative_solved = cumulative;

    out.iterations.push_back(std::move(record));
    history.push_back(&out.iterations.back().solo_runs);
    history.push_back(&out.iterations.back().combined_runs);
  }
  return out;
}

}  // namespace prover
