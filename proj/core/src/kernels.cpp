#include <cmath>
#include <string>

#include "erpclass/classifiers.hpp"
#include "erpclass/error.hpp"

namespace erpclass {

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kLengthMismatch, "vectors of length " + std::to_string(a.size()) +
                                                " and " + std::to_string(b.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

}  // namespace

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(squared_distance(a, b));
}

double rbf_kernel(std::span<const double> a, std::span<const double> b, double gamma) {
  if (!(gamma >= 0.0)) throw Error(ErrorCode::kInvalidConfig, "gamma must be >= 0");
  const double d2 = squared_distance(a, b);
  if (gamma == 0.0) return 1.0;
  return std::exp(-gamma * d2);
}

void validate(const ModelConfig& cfg) {
  std::visit(
      [](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, TreeConfig>) {
          if (c.max_depth && *c.max_depth == 0) {
            throw Error(ErrorCode::kInvalidConfig, "max_depth must be positive");
          }
          if (c.min_samples_split < 2) {
            throw Error(ErrorCode::kInvalidConfig, "min_samples_split must be >= 2");
          }
        } else if constexpr (std::is_same_v<T, KnnConfig>) {
          if (c.k && (*c.k == 0 || *c.k % 2 == 0)) {
            throw Error(ErrorCode::kInvalidConfig,
                        "k must be a positive odd integer, got " + std::to_string(*c.k));
          }
        } else {
          if (!(c.C > 0.0) || !std::isfinite(c.C)) {
            throw Error(ErrorCode::kInvalidConfig, "C must be positive");
          }
          if (c.gamma && (!(*c.gamma > 0.0) || !std::isfinite(*c.gamma))) {
            throw Error(ErrorCode::kInvalidConfig, "gamma must be positive");
          }
          if (!(c.tolerance > 0.0)) {
            throw Error(ErrorCode::kInvalidConfig, "tolerance must be positive");
          }
          if (c.max_passes == 0) throw Error(ErrorCode::kInvalidConfig, "max_passes must be positive");
        }
      },
      cfg);
}

std::string model_name(const ModelConfig& cfg) {
  switch (cfg.index()) {
    case 0: return "dt";
    case 1: return "knn";
    default: return "svm";
  }
}

}  // namespace erpclass
