#include "prover/gbt.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace prover {

namespace {

double route(const TreeNode& root, const SparseVector& v) {
  const TreeNode* node = &root;
  while (!node->is_leaf()) {
    double value = v.get(static_cast<uint32_t>(node->feature));
    node = value < node->threshold ? node->left.get() : node->right.get();
  }
  return node->leaf_value;
}

double sigmoid(double m) {
  if (m >= 0.0) {
    double z = std::exp(-m);
    return 1.0 / (1.0 + z);
  }
  double z = std::exp(m);
  return z / (1.0 + z);
}

// log(1 + e^x) without overflow
double softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

struct SplitChoice {
  double gain = 0.0;
  uint32_t feature = 0;
  double threshold = 0.0;
  bool found = false;
};

struct ValueGroup {
  double value;
  double g = 0.0;
  double h = 0.0;
  size_t count = 0;
};

class TreeBuilder {
public:
  TreeBuilder(const std::vector<Example>& data, const std::vector<double>& grad,
              const std::vector<double>& hess, const TrainParams& params)
      : data_(data), grad_(grad), hess_(hess), params_(params) {}

  std::unique_ptr<TreeNode> build(std::vector<uint32_t> rows) {
    return build_node(std::move(rows), 0);
  }

private:
  std::unique_ptr<TreeNode> make_leaf(double g_sum, double h_sum) const {
    auto node = std::make_unique<TreeNode>();
    double denom = h_sum + params_.l2_lambda;
    node->leaf_value = denom > 0.0 ? -params_.learning_rate * g_sum / denom : 0.0;
    return node;
  }

  // Exact greedy split over the features present in the node's rows; absent
  // sparse entries count as value 0. Candidate thresholds are midpoints
  // between consecutive distinct values. Ties in gain resolve to the lowest
  // feature index, then the lowest threshold (strict > comparison plus
  // ascending scan order).
  SplitChoice find_split(const std::vector<uint32_t>& rows, double g_sum, double h_sum) const {
    SplitChoice best;
    const size_t n = rows.size();
    std::unordered_map<uint32_t, std::vector<std::pair<double, uint32_t>>> columns;
    for (uint32_t row : rows)
      for (const auto& [f, value] : data_[row].vector.entries)
        columns[f].emplace_back(value, row);

    std::vector<uint32_t> features;
    features.reserve(columns.size());
    for (const auto& [f, _] : columns) features.push_back(f);
    std::sort(features.begin(), features.end());

    double lambda = params_.l2_lambda;
    double parent_score = (h_sum + lambda) > 0.0 ? g_sum * g_sum / (h_sum + lambda) : 0.0;

    for (uint32_t f : features) {
      auto& nonzero = columns[f];
      std::stable_sort(nonzero.begin(), nonzero.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });

      std::vector<ValueGroup> groups;
      double g_nz = 0.0, h_nz = 0.0;
      for (const auto& [value, row] : nonzero) {
        if (groups.empty() || groups.back().value != value) groups.push_back({value});
        groups.back().g += grad_[row];
        groups.back().h += hess_[row];
        groups.back().count++;
        g_nz += grad_[row];
        h_nz += hess_[row];
      }
      size_t zero_count = n - nonzero.size();
      if (zero_count > 0) {
        ValueGroup zeros{0.0, g_sum - g_nz, h_sum - h_nz, zero_count};
        auto pos = std::lower_bound(groups.begin(), groups.end(), 0.0,
                                    [](const ValueGroup& gr, double v) { return gr.value < v; });
        if (pos != groups.end() && pos->value == 0.0) {
          pos->g += zeros.g;
          pos->h += zeros.h;
          pos->count += zeros.count;
        } else {
          groups.insert(pos, zeros);
        }
      }
      if (groups.size() < 2) continue;

      double gl = 0.0, hl = 0.0;
      size_t count_left = 0;
      for (size_t k = 0; k + 1 < groups.size(); ++k) {
        gl += groups[k].g;
        hl += groups[k].h;
        count_left += groups[k].count;
        size_t count_right = n - count_left;
        if (count_left < params_.min_examples_per_leaf ||
            count_right < params_.min_examples_per_leaf)
          continue;
        double gr = g_sum - gl, hr = h_sum - hl;
        if (hl + lambda <= 0.0 || hr + lambda <= 0.0) continue;
        double gain = 0.5 * (gl * gl / (hl + lambda) + gr * gr / (hr + lambda) - parent_score) -
                      params_.gamma;
        if (!best.found || gain > best.gain) {
          best.found = true;
          best.gain = gain;
          best.feature = f;
          best.threshold = (groups[k].value + groups[k + 1].value) / 2.0;
        }
      }
    }
    return best;
  }

  std::unique_ptr<TreeNode> build_node(std::vector<uint32_t> rows, uint32_t depth) {
    double g_sum = 0.0, h_sum = 0.0;
    for (uint32_t row : rows) {
      g_sum += grad_[row];
      h_sum += hess_[row];
    }
    if (depth >= params_.max_depth || rows.size() < 2 * params_.min_examples_per_leaf)
      return make_leaf(g_sum, h_sum);

    SplitChoice split = find_split(rows, g_sum, h_sum);
    if (!split.found || split.gain <= 0.0) return make_leaf(g_sum, h_sum);

    std::vector<uint32_t> left, right;
    for (uint32_t row : rows) {
      double value = data_[row].vector.get(split.feature);
      (value < split.threshold ? left : right).push_back(row);
    }
    rows.clear();
    rows.shrink_to_fit();

    auto node = std::make_unique<TreeNode>();
    node->feature = static_cast<int32_t>(split.feature);
    node->threshold = split.threshold;
    node->left = build_node(std::move(left), depth + 1);
    node->right = build_node(std::move(right), depth + 1);
    return node;
  }

  const std::vector<Example>& data_;
  const std::vector<double>& grad_;
  const std::vector<double>& hess_;
  const TrainParams& params_;
};

}  // namespace

double Ensemble::margin(const SparseVector& v) const {
  if (v.dimension != meta.num_features)
    throw std::invalid_argument("vector dimension " + std::to_string(v.dimension) +
                                " does not match model num_features " +
                                std::to_string(meta.num_features));
  double m = base_margin;
  for (const auto& tree : trees) m += route(*tree, v);
  return m;
}

double Ensemble::probability(const SparseVector& v) const { return sigmoid(margin(v)); }

std::pair<Ensemble, TrainReport> train(const std::vector<Example>& data,
                                       const TrainParams& params) {
  auto start = std::chrono::steady_clock::now();
  if (data.empty()) throw std::invalid_argument("no training data");
  uint32_t dim = data[0].vector.dimension;
  bool has_pos = false, has_neg = false;
  for (const Example& e : data) {
    if (e.vector.dimension != dim)
      throw std::invalid_argument("training vectors disagree on dimension");
    (e.label ? has_pos : has_neg) = true;
  }
  if (!has_pos || !has_neg)
    throw std::invalid_argument("training data must contain both labels");

  const size_t n = data.size();
  Ensemble model;
  model.base_margin = 0.0;
  model.meta.num_features = dim;
  model.meta.hash_base = dim / 2;  // callers with sidecar metadata overwrite this
  model.meta.max_depth = params.max_depth;
  model.meta.learning_rate = params.learning_rate;
  model.meta.num_trees = params.num_trees;

  TrainReport report;
  report.round_logloss.reserve(params.num_trees);

  std::vector<double> margins(n, model.base_margin);
  std::vector<double> grad(n), hess(n);
  std::vector<uint32_t> all_rows(n);
  for (size_t i = 0; i < n; ++i) all_rows[i] = static_cast<uint32_t>(i);

  for (uint32_t round = 0; round < params.num_trees; ++round) {
    for (size_t i = 0; i < n; ++i) {
      double p = sigmoid(margins[i]);
      double w = data[i].label ? params.positive_weight : 1.0;
      grad[i] = w * (p - static_cast<double>(data[i].label));
      hess[i] = w * p * (1.0 - p);
    }
    TreeBuilder builder(data, grad, hess, params);
    auto tree = builder.build(all_rows);
    for (size_t i = 0; i < n; ++i) margins[i] += route(*tree, data[i].vector);
    model.trees.push_back(std::move(tree));

    double loss = 0.0;
    for (size_t i = 0; i < n; ++i)
      loss += softplus(data[i].label ? -margins[i] : margins[i]);
    report.round_logloss.push_back(loss / static_cast<double>(n));
  }

  size_t wrong = 0;
  for (size_t i = 0; i < n; ++i) {
    bool predicted = margins[i] >= 0.0;  // probability >= 0.5
    if (predicted != static_cast<bool>(data[i].label)) ++wrong;
  }
  report.final_error = static_cast<double>(wrong) / static_cast<double>(n);
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {std::move(model), std::move(report)};
}

namespace {

using nlohmann::json;

json node_to_json(const TreeNode& node) {
  if (node.is_leaf()) return json{{"leaf", node.leaf_value}};
  return json{{"f", node.feature},
              {"t", node.threshold},
              {"l", node_to_json(*node.left)},
              {"r", node_to_json(*node.right)}};
}

std::unique_ptr<TreeNode> node_from_json(const json& j) {
  auto node = std::make_unique<TreeNode>();
  if (j.contains("leaf")) {
    if (j.size() != 1) throw std::runtime_error("malformed model: bad leaf node");
    node->leaf_value = j.at("leaf").get<double>();
    return node;
  }
  if (!j.contains("f") || !j.contains("t") || !j.contains("l") || !j.contains("r"))
    throw std::runtime_error("malformed model: bad inner node");
  node->feature = j.at("f").get<int32_t>();
  if (node->feature < 0) throw std::runtime_error("malformed model: negative feature index");
  node->threshold = j.at("t").get<double>();
  node->left = node_from_json(j.at("l"));
  node->right = node_from_json(j.at("r"));
  return node;
}

constexpr int kModelVersion = 1;

}  // namespace

std::string model_to_json(const Ensemble& m) {
  json trees = json::array();
  for (const auto& tree : m.trees) trees.push_back(node_to_json(*tree));
  json j{{"version", kModelVersion},
         {"meta",
          {{"hash_base", m.meta.hash_base},
           {"num_features", m.meta.num_features},
           {"max_depth", m.meta.max_depth},
           {"learning_rate", m.meta.learning_rate},
           {"num_trees", m.trees.size()}}},
         {"base_margin", m.base_margin},
         {"trees", std::move(trees)}};
  return j.dump();
}

Ensemble model_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed model file: ") + e.what());
  }
  try {
    if (!j.contains("version") || j.at("version").get<int>() != kModelVersion)
      throw std::runtime_error("unsupported model version");
    Ensemble m;
    const json& meta = j.at("meta");
    m.meta.hash_base = meta.at("hash_base").get<uint32_t>();
    m.meta.num_features = meta.at("num_features").get<uint32_t>();
    m.meta.max_depth = meta.at("max_depth").get<uint32_t>();
    m.meta.learning_rate = meta.at("learning_rate").get<double>();
    m.meta.num_trees = meta.at("num_trees").get<uint32_t>();
    m.base_margin = j.at("base_margin").get<double>();
    for (const json& t : j.at("trees")) m.trees.push_back(node_from_json(t));
    if (m.trees.size() != m.meta.num_trees)
      throw std::runtime_error("malformed model: tree count disagrees with meta");
    return m;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed model file: ") + e.what());
  }
}

void save_model(const Ensemble& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write model file: " + path.string());
  out << model_to_json(m) << '\n';
  if (!out) throw std::runtime_error("failed writing model file: " + path.string());
}

Ensemble load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open model file: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

}  // namespace prover
