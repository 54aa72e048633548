#include "erpclass/feature_matrix.hpp"

#include <cmath>

#include "erpclass/error.hpp"

namespace erpclass {

FeatureMatrix::FeatureMatrix(ColumnSchema schema, std::vector<double> values,
                             std::vector<Label> labels, std::vector<std::string> subject_ids)
    : schema_(std::move(schema)),
      values_(std::move(values)),
      labels_(std::move(labels)),
      subject_ids_(std::move(subject_ids)) {
  if (subject_ids_.size() != labels_.size()) {
    throw Error(ErrorCode::kSchemaMismatch, "label count " + std::to_string(labels_.size()) +
                                                " != subject id count " +
                                                std::to_string(subject_ids_.size()));
  }
  if (values_.size() != labels_.size() * schema_.size()) {
    throw Error(ErrorCode::kSchemaMismatch,
                "value count " + std::to_string(values_.size()) + " != rows " +
                    std::to_string(labels_.size()) + " x cols " + std::to_string(schema_.size()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw Error(ErrorCode::kNonFiniteValue,
                  "row " + std::to_string(i / schema_.size()) + ", column '" +
                      schema_[i % schema_.size()].name + "'");
    }
  }
}

std::vector<double> FeatureMatrix::column(std::size_t c) const {
  std::vector<double> out(rows());
  for (std::size_t r = 0; r < rows(); ++r) out[r] = at(r, c);
  return out;
}

FeatureMatrix FeatureMatrix::take_rows(std::span<const std::size_t> indices) const {
  std::vector<double> values;
  values.reserve(indices.size() * cols());
  std::vector<Label> labels;
  std::vector<std::string> ids;
  labels.reserve(indices.size());
  ids.reserve(indices.size());
  for (std::size_t r : indices) {
    auto src = row(r);
    values.insert(values.end(), src.begin(), src.end());
    labels.push_back(labels_[r]);
    ids.push_back(subject_ids_[r]);
  }
  return FeatureMatrix(schema_, std::move(values), std::move(labels), std::move(ids));
}

FeatureMatrix FeatureMatrix::take_columns(const std::vector<std::size_t>& indices) const {
  std::vector<double> values;
  values.reserve(rows() * indices.size());
  for (std::size_t r = 0; r < rows(); ++r) {
    for (std::size_t c : indices) values.push_back(at(r, c));
  }
  return FeatureMatrix(schema_.subset(indices), std::move(values), labels_, subject_ids_);
}

FeatureMatrix FeatureMatrix::with_labels(std::vector<Label> labels) const {
  return FeatureMatrix(schema_, values_, std::move(labels), subject_ids_);
}

FeatureMatrix select_group(const FeatureMatrix& m, DatasetGroup g) {
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (group_contains(g, m.schema()[c].kind)) keep.push_back(c);
  }
  if (keep.empty()) {
    throw Error(ErrorCode::kEmptySelection,
                "group " + std::string(to_string(g)) + " matches no column");
  }
  if (keep.size() == m.cols()) return m;
  return m.take_columns(keep);
}

FeatureMatrix drop_columns(const FeatureMatrix& m, const std::set<std::string>& names) {
  for (const auto& n : names) m.schema().index_of(n);
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (!names.contains(m.schema()[c].name)) keep.push_back(c);
  }
  if (keep.size() == m.cols()) return m;
  return m.take_columns(keep);
}

}  // namespace erpclass
