#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "prover/features.hpp"

namespace prover {

/// Decision tree node. Inner nodes route left iff value < threshold
/// (absent sparse entries read as 0); leaves carry a margin contribution.
struct TreeNode {
  int32_t feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  double leaf_value = 0.0;
  std::unique_ptr<TreeNode> left;
  std::unique_ptr<TreeNode> right;

  bool is_leaf() const { return feature < 0; }
};

struct EnsembleMeta {
  uint32_t hash_base = 1u << 15;
  uint32_t num_features = 2u << 15;
  uint32_t max_depth = 9;
  double learning_rate = 0.3;
  uint32_t num_trees = 200;
};

/// Additive tree ensemble for binary clause classification.
struct Ensemble {
  std::vector<std::unique_ptr<TreeNode>> trees;
  double base_margin = 0.0;
  EnsembleMeta meta;

  /// base_margin plus the routed leaf value of every tree.
  double margin(const SparseVector& v) const;

  /// Logistic transform of the margin: probability the clause is positive.
  double probability(const SparseVector& v) const;
};

/// The paper's binary weight mapping: 1.0 for probabilities >= 0.5, else 10.0.
inline double clause_weight(double prob) { return prob >= 0.5 ? 1.0 : 10.0; }

/// Optional probability-scaled variant (off by default everywhere):
/// interpolates 10 at p=0 down to 1 at p=1.
inline double clause_weight_scaled(double prob) { return 10.0 - 9.0 * prob; }

struct TrainParams {
  uint32_t num_trees = 200;
  uint32_t max_depth = 9;
  double learning_rate = 0.3;
  double l2_lambda = 1.0;
  uint32_t min_examples_per_leaf = 1;
  double gamma = 0.0;
  double positive_weight = 1.0;  // class-imbalance multiplier for label-1 rows
};

struct TrainReport {
  std::vector<double> round_logloss;  // mean training logistic loss after each round
  double final_error = 0.0;           // misclassification rate at threshold 0.5
  double wall_seconds = 0.0;
};

struct Example {
  SparseVector vector;
  uint8_t label = 0;  // 0 or 1
};

/// Second-order boosting with logistic loss and exact greedy splits.
/// Deterministic: gain ties break toward the lowest feature index, then the
/// lowest threshold. Rejects single-class data and mixed dimensions.
std::pair<Ensemble, TrainReport> train(const std::vector<Example>& data,
                                       const TrainParams& params);

/// Versioned JSON model format; save/load round-trips margins exactly.
void save_model(const Ensemble& m, const std::filesystem::path& path);
Ensemble load_model(const std::filesystem::path& path);

std::string model_to_json(const Ensemble& m);
Ensemble model_from_json(const std::string& text);

}  // namespace prover
