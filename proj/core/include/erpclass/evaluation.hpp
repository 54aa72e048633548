#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "erpclass/classifiers.hpp"
#include "erpclass/feature_matrix.hpp"

namespace erpclass {

// trial: rows are split independently. subject: all rows of a subject stay
// on one side of every partition.
enum class SplitMode { kTrial, kSubject };

struct Holdout {
  double test_fraction = 0.2;  // in (0, 1); always stratified by class
  friend bool operator==(const Holdout&, const Holdout&) = default;
};

struct KFold {
  std::size_t folds = 10;  // >= 2
  bool stratified = true;
  friend bool operator==(const KFold&, const KFold&) = default;
};

struct SplitPolicy {
  SplitMode mode = SplitMode::kTrial;
  std::variant<Holdout, KFold> scheme = KFold{};
  std::uint64_t seed = 42;
  friend bool operator==(const SplitPolicy&, const SplitPolicy&) = default;
};

std::string_view to_string(SplitMode mode);
// "holdout:0.2" or "kfold:10".
std::string scheme_to_string(const SplitPolicy& policy);

struct Fold {
  std::vector<std::size_t> train;  // ascending
  std::vector<std::size_t> test;   // ascending
};

// Throws TooFewRows, SingleClass, InfeasibleStratification, InvalidConfig.
std::vector<Fold> split(const FeatureMatrix& m, const SplitPolicy& policy);

// SZ is the positive class.
struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t tn = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

struct EvalResult {
  double accuracy = 0.0;  // mean of per_fold
  std::vector<double> per_fold;
  std::vector<std::size_t> n_train;
  std::vector<std::size_t> n_test;
  ConfusionCounts confusion;  // summed over folds
  ModelSpec spec;
  SplitPolicy policy;

  std::size_t total_test() const;
};

// Per fold: fit preprocessing and model on the train rows, score the test
// rows. Folds may run on `threads` workers; per_fold stays in fold order.
EvalResult evaluate(const FeatureMatrix& m, const ModelSpec& spec, const SplitPolicy& policy,
                    std::size_t threads = 1);

std::string eval_to_json(const EvalResult& r);
// Config echoes, as embedded in result files and run manifests.
std::string model_spec_to_json(const ModelSpec& spec);
std::string split_policy_to_json(const SplitPolicy& policy);
std::string eval_csv_header();
// One CSV row; `group` labels the dataset group column.
std::string eval_to_csv_row(const EvalResult& r, std::string_view group);

struct GridCell {
  std::string model;  // "svm", "dt", "knn"
  DatasetGroup group = DatasetGroup::kAll;
  double accuracy = 0.0;
};

// Models as rows (svm, dt, knn), groups as columns (ERP, EEG_demographic,
// ALL). Missing cells are left empty.
std::string results_grid_csv(const std::vector<GridCell>& cells);

}  // namespace erpclass
