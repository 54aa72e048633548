#pragma once

#include <span>
#include <string>
#include <vector>

#include "erpclass/feature_matrix.hpp"
#include "erpclass/preprocessing.hpp"

namespace erpclass {

// Shannon entropy in bits, -sum p log2 p with 0 log 0 = 0. Throws
// InvalidDistribution on negative entries or a sum off 1 by more than 1e-9.
double entropy(std::span<const double> probabilities);

// Entropy of a label multiset given class counts; helper for split scoring.
double entropy_from_counts(std::span<const std::size_t> counts);

struct EntropyScore {
  std::string column;
  double entropy_bits = 0.0;

  friend bool operator==(const EntropyScore&, const EntropyScore&) = default;
};

// Sorted by descending entropy; ties keep schema order.
using EntropyRanking = std::vector<EntropyScore>;

// Marginal entropy of the column's equal-width bin frequencies.
EntropyScore column_entropy(const FeatureMatrix& m, const std::string& column,
                            const BinningConfig& cfg);

EntropyRanking rank_features(const FeatureMatrix& m, const BinningConfig& cfg);

std::string ranking_to_csv(const EntropyRanking& ranking);

}  // namespace erpclass
