#include <algorithm>
#include <numeric>

#include "erpclass/classifiers.hpp"
#include "erpclass/error.hpp"

namespace erpclass {

namespace {

constexpr std::size_t kAutoFolds = 5;
constexpr std::size_t kAutoMaxK = 31;

struct Neighbor {
  double distance;
  std::size_t index;
};

bool closer(const Neighbor& a, const Neighbor& b) {
  return a.distance < b.distance || (a.distance == b.distance && a.index < b.index);
}

// The `count` nearest rows among `candidates`, nearest first.
std::vector<Neighbor> nearest(std::span<const double> query, std::span<const double> train,
                              std::size_t n_features, std::span<const std::size_t> candidates,
                              std::size_t count) {
  std::vector<Neighbor> all;
  all.reserve(candidates.size());
  for (std::size_t idx : candidates) {
    all.push_back({euclidean_distance(query, train.subspan(idx * n_features, n_features)), idx});
  }
  count = std::min(count, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(count), all.end(),
                    closer);
  all.resize(count);
  return all;
}

// Majority over the first k neighbors; a tied vote goes to the nearest one.
Label vote(std::span<const Neighbor> neighbors, std::span<const Label> labels, std::size_t k) {
  std::size_t sz = 0;
  for (std::size_t i = 0; i < k; ++i) sz += labels[neighbors[i].index] == Label::SZ;
  const std::size_t hc = k - sz;
  if (sz == hc) return labels[neighbors[0].index];
  return sz > hc ? Label::SZ : Label::HC;
}

// Rows i with i % folds == f form fold f.
std::vector<std::vector<std::size_t>> round_robin_folds(std::size_t n, std::size_t folds) {
  std::vector<std::vector<std::size_t>> out(folds);
  for (std::size_t i = 0; i < n; ++i) out[i % folds].push_back(i);
  return out;
}

// Mean fold accuracy for every k in `ks`, sharing neighbor searches.
std::vector<double> cv_accuracies(const FeatureMatrix& train, std::span<const std::size_t> ks) {
  const std::size_t n = train.rows();
  const std::size_t folds = std::min(kAutoFolds, n);
  const std::size_t kmax = ks.empty() ? 0 : *std::max_element(ks.begin(), ks.end());
  std::vector<double> acc(ks.size(), 0.0);
  const auto fold_rows = round_robin_folds(n, folds);
  for (std::size_t f = 0; f < folds; ++f) {
    std::vector<std::size_t> inner;
    for (std::size_t i = 0; i < n; ++i) {
      if (i % folds != f) inner.push_back(i);
    }
    std::vector<std::size_t> correct(ks.size(), 0);
    for (std::size_t q : fold_rows[f]) {
      auto nb = nearest(train.row(q), train.values(), train.cols(), inner, kmax);
      for (std::size_t j = 0; j < ks.size(); ++j) {
        correct[j] += vote(nb, train.labels(), ks[j]) == train.labels()[q];
      }
    }
    for (std::size_t j = 0; j < ks.size(); ++j) {
      acc[j] += static_cast<double>(correct[j]) / static_cast<double>(fold_rows[f].size());
    }
  }
  for (auto& a : acc) a /= static_cast<double>(folds);
  return acc;
}

}  // namespace

double knn_internal_cv_accuracy(const FeatureMatrix& train, std::size_t k) {
  if (train.rows() < 2) throw Error(ErrorCode::kTooFewRows, "internal CV needs at least 2 rows");
  const std::size_t folds = std::min(kAutoFolds, train.rows());
  const std::size_t smallest_inner = train.rows() - (train.rows() + folds - 1) / folds;
  if (k > smallest_inner) {
    throw Error(ErrorCode::kKTooLarge, "k = " + std::to_string(k) + " exceeds inner fold size " +
                                           std::to_string(smallest_inner));
  }
  const std::size_t ks[] = {k};
  return cv_accuracies(train, ks).front();
}

std::size_t resolve_knn_k(const FeatureMatrix& train) {
  const std::size_t n = train.rows();
  if (n < 2) return 1;
  const std::size_t folds = std::min(kAutoFolds, n);
  const std::size_t smallest_inner = n - (n + folds - 1) / folds;
  const std::size_t kmax = std::min({kAutoMaxK, n - 1, smallest_inner});
  std::vector<std::size_t> ks;
  for (std::size_t k = 1; k <= kmax; k += 2) ks.push_back(k);
  if (ks.size() <= 1) return 1;
  const auto acc = cv_accuracies(train, ks);
  std::size_t best = 0;
  for (std::size_t j = 1; j < ks.size(); ++j) {
    if (acc[j] > acc[best] + 1e-12) best = j;
  }
  return ks[best];
}

Label KnnModel::predict_row(std::span<const double> x) const {
  std::vector<std::size_t> all(labels.size());
  std::iota(all.begin(), all.end(), 0);
  auto nb = nearest(x, train, n_features, all, k);
  return vote(nb, labels, k);
}

TrainedModel fit_knn(const FeatureMatrix& train, const KnnConfig& cfg) {
  validate(cfg);
  if (train.rows() == 0) throw Error(ErrorCode::kEmptyTrainingSet, "kNN needs at least one row");
  KnnModel model;
  model.config = cfg;
  if (cfg.k) {
    if (*cfg.k > train.rows()) {
      throw Error(ErrorCode::kKTooLarge, "k = " + std::to_string(*cfg.k) + " exceeds " +
                                             std::to_string(train.rows()) + " training rows");
    }
    model.k = *cfg.k;
  } else {
    model.k = resolve_knn_k(train);
  }
  model.n_features = train.cols();
  model.train.assign(train.values().begin(), train.values().end());
  model.labels = train.labels();
  return TrainedModel{train.schema().names(), std::nullopt, std::move(model)};
}

}  // namespace erpclass
