#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "erpclass/feature_matrix.hpp"
#include "erpclass/preprocessing.hpp"

namespace erpclass {

// sqrt(sum (a_i - b_i)^2), summed in index order. Throws LengthMismatch.
double euclidean_distance(std::span<const double> a, std::span<const double> b);
// exp(-gamma * ||a - b||^2). Throws LengthMismatch; gamma must be >= 0.
double rbf_kernel(std::span<const double> a, std::span<const double> b, double gamma);

// ---------------------------------------------------------------------------
// Configurations

struct TreeConfig {
  std::optional<std::size_t> max_depth;  // nullopt = unlimited
  std::size_t min_samples_split = 2;

  friend bool operator==(const TreeConfig&, const TreeConfig&) = default;
};

struct KnnConfig {
  // nullopt = AUTO: 5-fold internal CV over odd k <= min(31, n - 1).
  std::optional<std::size_t> k;

  friend bool operator==(const KnnConfig&, const KnnConfig&) = default;
};

struct SvmConfig {
  double C = 1.0;
  // nullopt = SCALE: 1 / (n_features * mean per-column variance).
  std::optional<double> gamma;
  double tolerance = 1e-3;
  // Pair-update budget is max_passes * n_train.
  std::size_t max_passes = 100;
  std::uint64_t seed = 42;

  friend bool operator==(const SvmConfig&, const SvmConfig&) = default;
};

using ModelConfig = std::variant<TreeConfig, KnnConfig, SvmConfig>;

// Throws InvalidConfig.
void validate(const ModelConfig& cfg);
std::string model_name(const ModelConfig& cfg);  // "dt", "knn", "svm"

// ---------------------------------------------------------------------------
// Fitted models

struct TreeNode {
  // Internal node: feature >= 0, rows with value <= threshold go left.
  // Leaf: feature == -1.
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  Label label = Label::HC;  // majority label at this node, ties -> HC
  double purity = 1.0;      // majority fraction at this node
  std::size_t samples = 0;

  bool is_leaf() const { return feature < 0; }
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct TreeModel {
  TreeConfig config;
  std::vector<TreeNode> nodes;  // nodes[0] is the root; children follow in preorder

  Label predict_row(std::span<const double> x) const;
  std::size_t depth() const;
  friend bool operator==(const TreeModel&, const TreeModel&) = default;
};

struct KnnModel {
  KnnConfig config;
  std::size_t k = 1;  // resolved
  std::size_t n_features = 0;
  std::vector<double> train;  // row-major
  std::vector<Label> labels;

  Label predict_row(std::span<const double> x) const;
  friend bool operator==(const KnnModel&, const KnnModel&) = default;
};

struct SvmModel {
  SvmConfig config;
  double gamma = 1.0;  // resolved
  std::size_t n_features = 0;
  std::vector<double> support_vectors;  // row-major, only alpha > 0
  std::vector<double> dual_coef;        // alpha_i * y_i, SZ = +1, HC = -1
  double bias = 0.0;
  bool converged = true;
  std::size_t iterations = 0;

  double decision_value(std::span<const double> x) const;
  // f(x) == 0 maps to HC.
  Label predict_row(std::span<const double> x) const;
  std::size_t n_support() const { return dual_coef.size(); }
  friend bool operator==(const SvmModel&, const SvmModel&) = default;
};

using ModelVariant = std::variant<TreeModel, KnnModel, SvmModel>;

// A fitted classifier plus the feature schema it expects and, for the
// distance-based models, the standardizer fitted on its training rows.
struct TrainedModel {
  std::vector<std::string> feature_names;
  std::optional<StandardizerState> standardizer;
  ModelVariant model;

  friend bool operator==(const TrainedModel&, const TrainedModel&) = default;
};

TrainedModel fit_tree(const FeatureMatrix& train, const TreeConfig& cfg);
TrainedModel fit_knn(const FeatureMatrix& train, const KnnConfig& cfg);
TrainedModel fit_svm(const FeatureMatrix& train, const SvmConfig& cfg);

// Cross-validated k selection used by AUTO mode. Exposed for tests.
std::size_t resolve_knn_k(const FeatureMatrix& train);
double knn_internal_cv_accuracy(const FeatureMatrix& train, std::size_t k);

struct ModelSpec {
  ModelConfig config = TreeConfig{};
  // Applies to kNN and SVM only; the tree always sees raw values.
  bool standardize = true;
};

// Fits the standardizer (when applicable) and the model on `train`.
TrainedModel fit_model(const FeatureMatrix& train, const ModelSpec& spec);

// Throws SchemaMismatch if the columns differ from training.
std::vector<Label> predict(const TrainedModel& model, const FeatureMatrix& rows);

std::string model_to_json(const TrainedModel& model);
// Throws InvalidModel.
TrainedModel model_from_json(const std::string& text);

}  // namespace erpclass
