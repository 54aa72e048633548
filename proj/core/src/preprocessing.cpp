#include "erpclass/preprocessing.hpp"

#include <algorithm>
#include <cmath>

#include "erpclass/error.hpp"

namespace erpclass {

StandardizerState fit_standardizer(const FeatureMatrix& train) {
  if (train.rows() < 2) {
    throw Error(ErrorCode::kTooFewRows, "standardizer needs at least 2 rows, got " +
                                            std::to_string(train.rows()));
  }
  const std::size_t n = train.rows();
  StandardizerState s;
  s.columns = train.schema().names();
  s.means.assign(train.cols(), 0.0);
  s.stddevs.assign(train.cols(), 0.0);
  for (std::size_t c = 0; c < train.cols(); ++c) {
    double sum = 0.0;
    double lo = train.at(0, c);
    double hi = lo;
    for (std::size_t r = 0; r < n; ++r) {
      const double v = train.at(r, c);
      sum += v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const double mean = sum / static_cast<double>(n);
    s.means[c] = mean;
    if (lo == hi) {
      s.means[c] = lo;
      continue;
    }
    double ss = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      const double d = train.at(r, c) - mean;
      ss += d * d;
    }
    s.stddevs[c] = std::sqrt(ss / static_cast<double>(n));
  }
  return s;
}

namespace {

void check_columns(const StandardizerState& s, const FeatureMatrix& m) {
  if (s.columns != m.schema().names()) {
    throw Error(ErrorCode::kSchemaMismatch, "standardizer was fitted on different columns");
  }
}

}  // namespace

void apply_standardizer_inplace(const StandardizerState& s, std::span<double> row) {
  if (row.size() != s.means.size()) {
    throw Error(ErrorCode::kSchemaMismatch, "row width does not match standardizer");
  }
  for (std::size_t c = 0; c < row.size(); ++c) {
    row[c] = s.stddevs[c] > 0.0 ? (row[c] - s.means[c]) / s.stddevs[c] : 0.0;
  }
}

FeatureMatrix apply_standardizer(const StandardizerState& s, const FeatureMatrix& m) {
  check_columns(s, m);
  std::vector<double> values(m.values().begin(), m.values().end());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    apply_standardizer_inplace(s, std::span<double>(values.data() + r * m.cols(), m.cols()));
  }
  return FeatureMatrix(m.schema(), std::move(values), m.labels(), m.subject_ids());
}

FeatureMatrix invert_standardizer(const StandardizerState& s, const FeatureMatrix& m) {
  check_columns(s, m);
  std::vector<double> values(m.values().begin(), m.values().end());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::size_t c = i % m.cols();
    values[i] = s.stddevs[c] > 0.0 ? values[i] * s.stddevs[c] + s.means[c] : s.means[c];
  }
  return FeatureMatrix(m.schema(), std::move(values), m.labels(), m.subject_ids());
}

std::vector<std::size_t> discretize_column(std::span<const double> values,
                                           const BinningConfig& cfg) {
  if (cfg.bin_count < 2) {
    throw Error(ErrorCode::kInvalidConfig, "bin_count must be >= 2");
  }
  if (values.empty()) throw Error(ErrorCode::kTooFewRows, "cannot discretize an empty column");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw Error(ErrorCode::kNonFiniteValue, "value at index " + std::to_string(i));
    }
  }
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  std::vector<std::size_t> bins(values.size(), 0);
  if (lo == hi) return bins;
  const double span = hi - lo;
  const auto k = static_cast<double>(cfg.bin_count);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double pos = (values[i] - lo) / span * k;
    bins[i] = std::min(static_cast<std::size_t>(pos), cfg.bin_count - 1);
  }
  return bins;
}

}  // namespace erpclass
