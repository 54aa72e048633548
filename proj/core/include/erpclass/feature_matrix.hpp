#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "erpclass/schema.hpp"

namespace erpclass {

// Dense row-major matrix of finite values with one label and one subject id
// per row. Immutable once constructed.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  // Throws SchemaMismatch on inconsistent sizes, NonFiniteValue on NaN/inf.
  FeatureMatrix(ColumnSchema schema, std::vector<double> values, std::vector<Label> labels,
                std::vector<std::string> subject_ids);

  const ColumnSchema& schema() const { return schema_; }
  std::size_t rows() const { return labels_.size(); }
  std::size_t cols() const { return schema_.size(); }
  bool empty() const { return labels_.empty(); }

  double at(std::size_t r, std::size_t c) const { return values_[r * cols() + c]; }
  std::span<const double> row(std::size_t r) const {
    return {values_.data() + r * cols(), cols()};
  }
  std::vector<double> column(std::size_t c) const;

  std::span<const double> values() const { return values_; }
  const std::vector<Label>& labels() const { return labels_; }
  const std::vector<std::string>& subject_ids() const { return subject_ids_; }

  FeatureMatrix take_rows(std::span<const std::size_t> indices) const;
  FeatureMatrix take_columns(const std::vector<std::size_t>& indices) const;
  // Same values and ids, different labels. Used for permutation tests.
  FeatureMatrix with_labels(std::vector<Label> labels) const;

  friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;

 private:
  ColumnSchema schema_;
  std::vector<double> values_;
  std::vector<Label> labels_;
  std::vector<std::string> subject_ids_;
};

// Keeps the columns whose kind belongs to the group, in original order.
// Throws EmptySelection when nothing matches.
FeatureMatrix select_group(const FeatureMatrix& m, DatasetGroup g);

// Throws UnknownColumn if any name is absent.
FeatureMatrix drop_columns(const FeatureMatrix& m, const std::set<std::string>& names);

}  // namespace erpclass
