#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "prover/gen.hpp"
#include "prover/libsvm.hpp"
#include "prover/loop.hpp"

namespace {

using namespace prover;

constexpr const char* kDefaultBaseStrategy = "2*SymbolCount(2,1),1*Age,1*ConjectureOverlap(-1)";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int cmd_prove(const std::string& file, const std::string& strategy_spec,
              const std::string& model_path, const std::string& mode, double timeout,
              uint64_t max_processed, uint64_t max_generated, const std::string& dump_trace,
              bool scaled_weight) {
  Problem problem = parse_problem_file(file);
  Strategy base = parse_strategy(strategy_spec);
  base.name = "S";

  Ensemble model;
  Strategy strategy = base;
  bool unfair = false;
  if (!model_path.empty()) {
    model = load_model(model_path);
    if (mode == "solo") {
      strategy = compose_solo(base, model, false, scaled_weight);
    } else if (mode == "pure-solo") {
      strategy = compose_solo(base, model, true, scaled_weight);
      unfair = true;
    } else if (mode == "combined") {
      strategy = compose_combined(base, model, scaled_weight);
    } else {
      throw UsageError("unknown mode '" + mode + "' (expected solo|combined|pure-solo)");
    }
  } else if (mode != "combined" && !mode.empty() && mode != "solo") {
    throw UsageError("--mode requires --model");
  }

  Limits limits{timeout, max_processed, max_generated};
  SearchResult result = saturate(problem, strategy, limits, unfair);

  if (!dump_trace.empty()) {
    std::ofstream out(dump_trace);
    if (!out) throw std::runtime_error("cannot write trace: " + dump_trace);
    write_trace(out, result, problem.symbols);
  }

  double gps = result.stats.wall_seconds > 0.0
                   ? static_cast<double>(result.stats.generated_count) / result.stats.wall_seconds
                   : 0.0;
  std::cout << "% given: " << result.stats.given_count
            << "  generated: " << result.stats.generated_count << "  time: " << std::fixed
            << std::setprecision(3) << result.stats.wall_seconds << "s  inference speed: "
            << std::setprecision(1) << gps << " clauses/s\n";
  if (result.proof) std::cout << "% proof clauses: " << result.proof->size() << "\n";
  const char* szs = result.verdict == Verdict::Unsatisfiable ? "Unsatisfiable"
                    : result.verdict == Verdict::Saturated   ? "Satisfiable"
                                                             : "ResourceOut";
  std::cout << "SZS status " << szs << " for " << problem.name << "\n";
  return 0;
}

int cmd_features(const std::string& traces_dir, const std::string& out_path, uint32_t hash_base,
                 bool no_conjecture, double neg_sample) {
  std::vector<RunResult> pseudo;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(traces_dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".trace") continue;
    RunResult r;
    r.problem = entry.path().stem().string();
    r.verdict = RunResult::Outcome::Unsatisfiable;
    r.trace_path = entry.path().string();
    pseudo.push_back(std::move(r));
  }
  std::sort(pseudo.begin(), pseudo.end(),
            [](const RunResult& a, const RunResult& b) { return a.trace_path < b.trace_path; });
  if (pseudo.empty()) throw std::runtime_error("no .trace files under " + traces_dir);

  FeatureConfig cfg;
  cfg.hash.base = hash_base;
  cfg.conjecture_embedding = !no_conjecture;
  size_t lines = accumulate_training({&pseudo}, cfg, out_path, neg_sample);
  std::cout << "wrote " << lines << " examples to " << out_path << "\n";
  return 0;
}

int cmd_train(const std::string& data_path, uint32_t trees, uint32_t depth, double eta,
              double lambda, const std::string& out_path) {
  DataMeta meta = read_data_meta(meta_path_for(data_path));
  std::vector<Example> data = read_examples_file(data_path, meta.dimension());

  TrainParams params;
  params.num_trees = trees;
  params.max_depth = depth;
  params.learning_rate = eta;
  params.l2_lambda = lambda;
  auto [model, report] = train(data, params);
  model.meta.hash_base = meta.hash_base;
  save_model(model, out_path);
  std::cout << "trained " << model.trees.size() << " trees on " << data.size()
            << " examples; training error " << report.final_error << ", final logloss "
            << report.round_logloss.back() << ", " << std::fixed << std::setprecision(1)
            << report.wall_seconds << "s\n";
  return 0;
}

int cmd_loop(const std::string& corpus_dir, const std::string& base_spec, uint32_t iterations,
             double timeout, uint64_t max_processed, uint64_t max_generated, unsigned jobs,
             const std::string& workdir, uint32_t depth, uint32_t trees, uint32_t hash_base) {
  LoopConfig cfg;
  cfg.corpus_dir = corpus_dir;
  cfg.workdir = workdir;
  cfg.base_strategy = parse_strategy(base_spec);
  cfg.base_strategy.name = "S";
  cfg.iterations = iterations;
  cfg.limits = Limits{timeout, max_processed, max_generated};
  cfg.train_params.max_depth = depth;
  cfg.train_params.num_trees = trees;
  cfg.features.hash.base = hash_base;
  cfg.jobs = jobs;

  LoopOutcome outcome = run_loop(cfg);
  std::cout << kReportHeader << "\n";
  DeltaReport base_delta = report_delta(outcome.base_runs, outcome.base_runs);
  std::cout << format_report_row("S", base_delta) << "\n";
  for (const IterationRecord& it : outcome.iterations) {
    std::cout << format_report_row("S.solo[" + std::to_string(it.index) + "]", it.solo_delta)
              << "\n";
    std::cout << format_report_row("S.combined[" + std::to_string(it.index) + "]",
                                   it.combined_delta)
              << "\n";
  }
  if (!outcome.iterations.empty())
    std::cout << "cumulative solved: " << outcome.iterations.back().cumulative_solved.size()
              << "\n";
  return 0;
}

int cmd_report(const std::string& baseline_path, const std::string& current_path) {
  auto baseline = read_results(baseline_path);
  auto current = read_results(current_path);
  DeltaReport d = report_delta(baseline, current);
  std::cout << kReportHeader << "\n" << format_report_row("current", d) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Saturation prover with learned given-clause guidance"};
  app.require_subcommand(1);

  // prove
  std::string prove_file, prove_strategy = kDefaultBaseStrategy, prove_model, prove_mode = "solo";
  std::string prove_trace;
  double prove_timeout = 0.0;
  uint64_t prove_max_processed = 0, prove_max_generated = 0;
  bool prove_scaled = false;
  auto* prove = app.add_subcommand("prove", "Run one saturation proof search");
  prove->add_option("file", prove_file, "TPTP CNF problem file")->required();
  prove->add_option("--strategy", prove_strategy, "base strategy spec");
  prove->add_option("--model", prove_model, "trained model JSON");
  prove->add_option("--mode", prove_mode, "model composition: solo|combined|pure-solo");
  prove->add_option("--timeout", prove_timeout, "wall-clock limit in seconds (0 = none)");
  prove->add_option("--max-processed", prove_max_processed, "given-clause cap (0 = none)");
  prove->add_option("--max-generated", prove_max_generated, "generated-clause cap (0 = none)");
  prove->add_option("--dump-trace", prove_trace, "write the proof trace to this path");
  prove->add_flag("--scaled-weight", prove_scaled, "probability-scaled model weights");

  // features
  std::string feat_traces, feat_out;
  uint32_t feat_base = 1u << 15;
  bool feat_noconj = false;
  double feat_neg_sample = 1.0;
  auto* features = app.add_subcommand("features", "Extract training data from proof traces");
  features->add_option("--traces", feat_traces, "directory of .trace files")->required();
  features->add_option("--out", feat_out, "output training data file")->required();
  features->add_option("--hash-base", feat_base, "feature hash base");
  features->add_flag("--no-conjecture", feat_noconj, "disable the conjecture block");
  features->add_option("--neg-sample", feat_neg_sample, "keep this fraction of negatives");

  // train
  std::string train_data, train_out;
  uint32_t train_trees = 200, train_depth = 9;
  double train_eta = 0.3, train_lambda = 1.0;
  auto* train_cmd = app.add_subcommand("train", "Train a boosted-tree model");
  train_cmd->add_option("--data", train_data, "training data file")->required();
  train_cmd->add_option("--trees", train_trees, "number of boosting rounds");
  train_cmd->add_option("--depth", train_depth, "maximum tree depth");
  train_cmd->add_option("--eta", train_eta, "learning rate");
  train_cmd->add_option("--lambda", train_lambda, "L2 regularization");
  train_cmd->add_option("--out", train_out, "output model path")->required();

  // loop
  std::string loop_corpus, loop_workdir, loop_base = kDefaultBaseStrategy;
  uint32_t loop_iters = 1, loop_depth = 9, loop_trees = 200, loop_base_hash = 1u << 15;
  double loop_timeout = 0.0;
  uint64_t loop_max_processed = 5000, loop_max_generated = 0;
  unsigned loop_jobs = 1;
  auto* loop = app.add_subcommand("loop", "Iterated prove/learn/prove over a corpus");
  loop->add_option("--corpus", loop_corpus, "directory of .p problems")->required();
  loop->add_option("--base-strategy", loop_base, "base strategy spec");
  loop->add_option("--iterations", loop_iters, "number of learn iterations");
  loop->add_option("--timeout", loop_timeout, "per-problem wall-clock limit (0 = none)");
  loop->add_option("--max-processed", loop_max_processed, "per-problem given-clause cap");
  loop->add_option("--max-generated", loop_max_generated, "per-problem generated cap (0 = none)");
  loop->add_option("--jobs", loop_jobs, "concurrent searches");
  loop->add_option("--workdir", loop_workdir, "artifact directory")->required();
  loop->add_option("--depth", loop_depth, "tree depth for training");
  loop->add_option("--trees", loop_trees, "trees per model");
  loop->add_option("--hash-base", loop_base_hash, "feature hash base");

  // report
  std::string report_baseline, report_current;
  auto* report = app.add_subcommand("report", "Compare two result files");
  report->add_option("--baseline", report_baseline, "baseline results TSV")->required();
  report->add_option("--current", report_current, "current results TSV")->required();

  // gen
  std::string gen_out;
  uint32_t gen_count = 200;
  uint64_t gen_seed = 1;
  auto* gen = app.add_subcommand("gen", "Generate a desk-scale problem corpus");
  gen->add_option("--out", gen_out, "output directory")->required();
  gen->add_option("--count", gen_count, "number of problems");
  gen->add_option("--seed", gen_seed, "generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;  // usage errors exit 1, --help exits 0
  }

  try {
    if (prove->parsed())
      return cmd_prove(prove_file, prove_strategy, prove_model, prove_mode, prove_timeout,
                       prove_max_processed, prove_max_generated, prove_trace, prove_scaled);
    if (features->parsed())
      return cmd_features(feat_traces, feat_out, feat_base, feat_noconj, feat_neg_sample);
    if (train_cmd->parsed())
      return cmd_train(train_data, train_trees, train_depth, train_eta, train_lambda, train_out);
    if (loop->parsed())
      return cmd_loop(loop_corpus, loop_base, loop_iters, loop_timeout, loop_max_processed,
                      loop_max_generated, loop_jobs, loop_workdir, loop_depth, loop_trees,
                      loop_base_hash);
    if (report->parsed()) return cmd_report(report_baseline, report_current);
    if (gen->parsed()) {
      size_t n = write_corpus(gen_out, gen_count, gen_seed);
      std::cout << "wrote " << n << " problems to " << gen_out << "\n";
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const prover::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
