#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "erpclass/feature_matrix.hpp"
#include "erpclass/random.hpp"
#include "erpclass/synthetic.hpp"
#include "erpclass/table_io.hpp"

namespace erpclass::fixture {

inline ColumnSchema generic_schema(std::size_t cols, const std::string& prefix = "f") {
  std::vector<Column> c;
  for (std::size_t i = 0; i < cols; ++i) c.push_back(timing_column(prefix + std::to_string(i)));
  return ColumnSchema(std::move(c));
}

// One subject per row unless ids are given.
inline FeatureMatrix matrix(std::size_t cols, std::vector<double> values, std::vector<Label> labels,
                            std::vector<std::string> ids = {}) {
  if (ids.empty()) {
    for (std::size_t i = 0; i < labels.size(); ++i) ids.push_back("s" + std::to_string(i));
  }
  return FeatureMatrix(generic_schema(cols), std::move(values), std::move(labels), std::move(ids));
}

// Uniform [-1, 1) features and random labels with both classes present.
inline FeatureMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  std::vector<double> v(rows * cols);
  for (double& x : v) x = 2.0 * rng.uniform() - 1.0;
  std::vector<Label> labels(rows);
  for (std::size_t i = 0; i < rows; ++i) labels[i] = rng.uniform() < 0.5 ? Label::SZ : Label::HC;
  labels[0] = Label::SZ;
  labels[1] = Label::HC;
  return matrix(cols, std::move(v), std::move(labels));
}

// Two isotropic Gaussian blobs, SZ around -sep/2 and HC around +sep/2 on
// every axis.
inline FeatureMatrix blobs(Rng& rng, std::size_t per_class, std::size_t cols, double sep) {
  std::vector<double> v;
  std::vector<Label> labels;
  for (std::size_t i = 0; i < 2 * per_class; ++i) {
    const bool sz = i % 2 == 0;
    for (std::size_t c = 0; c < cols; ++c) v.push_back((sz ? -sep : sep) / 2.0 + rng.normal());
    labels.push_back(sz ? Label::SZ : Label::HC);
  }
  return matrix(cols, std::move(v), std::move(labels));
}

inline FeatureMatrix synth_matrix(const SynthConfig& cfg) {
  auto cohort = generate(cfg);
  return merge(cohort.erp, cohort.eeg, cohort.demographics);
}

// Balanced cohort over `cols` standard-normal features where only column
// `signal` separates the classes, by `sep` standard deviations.
inline FeatureMatrix planted(Rng& rng, std::size_t per_class, std::size_t cols,
                             std::size_t signal, double sep) {
  std::vector<double> v;
  std::vector<Label> labels;
  for (std::size_t i = 0; i < 2 * per_class; ++i) {
    const bool sz = i % 2 == 0;
    for (std::size_t c = 0; c < cols; ++c) {
      const double shift = c == signal ? (sz ? -sep / 2.0 : sep / 2.0) : 0.0;
      v.push_back(shift + rng.normal());
    }
    labels.push_back(sz ? Label::SZ : Label::HC);
  }
  return matrix(cols, std::move(v), std::move(labels));
}

}  // namespace erpclass::fixture
