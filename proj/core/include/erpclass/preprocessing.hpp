#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "erpclass/feature_matrix.hpp"

namespace erpclass {

// Per-column z-score parameters, fitted on training rows only.
struct StandardizerState {
  std::vector<std::string> columns;
  std::vector<double> means;
  std::vector<double> stddevs;  // population convention; 0 for constant columns

  friend bool operator==(const StandardizerState&, const StandardizerState&) = default;
};

// Throws TooFewRows when train has fewer than two rows.
StandardizerState fit_standardizer(const FeatureMatrix& train);

// x -> (x - mean) / stddev; constant columns map to 0. Throws SchemaMismatch.
FeatureMatrix apply_standardizer(const StandardizerState& s, const FeatureMatrix& m);
void apply_standardizer_inplace(const StandardizerState& s, std::span<double> row);

// Inverse map for non-constant columns; constant columns return their mean.
FeatureMatrix invert_standardizer(const StandardizerState& s, const FeatureMatrix& m);

struct BinningConfig {
  std::size_t bin_count = 10;  // >= 2; strategy is always equal-width
};

// Equal-width bins over [min, max]; the maximum lands in the last bin and a
// constant input maps entirely to bin 0. Throws NonFiniteValue,
// InvalidConfig (bin_count < 2), TooFewRows (empty input).
std::vector<std::size_t> discretize_column(std::span<const double> values,
                                           const BinningConfig& cfg);

}  // namespace erpclass
