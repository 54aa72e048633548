#include <algorithm>
#include <array>
#include <numeric>

#include "erpclass/classifiers.hpp"
#include "erpclass/entropy.hpp"
#include "erpclass/error.hpp"

namespace erpclass {

namespace {

// Gains closer than this are treated as equal, so the earlier candidate
// (lower column, then lower threshold) wins.
constexpr double kGainEpsilon = 1e-12;

std::size_t label_index(Label l) { return l == Label::SZ ? 0 : 1; }

struct Split {
  int feature = -1;
  double threshold = 0.0;
  double gain = 0.0;
};

class TreeBuilder {
 public:
  TreeBuilder(const FeatureMatrix& data, const TreeConfig& cfg) : data_(data), cfg_(cfg) {}

  std::vector<TreeNode> build() {
    std::vector<std::size_t> rows(data_.rows());
    std::iota(rows.begin(), rows.end(), 0);
    grow(rows, 0);
    return std::move(nodes_);
  }

 private:
  int grow(std::vector<std::size_t>& rows, std::size_t depth) {
    std::array<std::size_t, 2> counts{0, 0};
    for (auto r : rows) ++counts[label_index(data_.labels()[r])];

    TreeNode node;
    node.samples = rows.size();
    node.label = counts[0] > counts[1] ? Label::SZ : Label::HC;
    node.purity = static_cast<double>(std::max(counts[0], counts[1])) /
                  static_cast<double>(rows.size());
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(node);

    const double parent_entropy = entropy_from_counts(counts);
    if (parent_entropy == 0.0) return id;
    if (cfg_.max_depth && depth >= *cfg_.max_depth) return id;
    if (rows.size() < cfg_.min_samples_split) return id;

    const Split best = best_split(rows, counts, parent_entropy);
    if (best.feature < 0) return id;

    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    for (auto r : rows) {
      (data_.at(r, static_cast<std::size_t>(best.feature)) <= best.threshold ? left : right)
          .push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();

    nodes_[id].feature = best.feature;
    nodes_[id].threshold = best.threshold;
    const int l = grow(left, depth + 1);
    nodes_[id].left = l;
    const int r = grow(right, depth + 1);
    nodes_[id].right = r;
    return id;
  }

  Split best_split(const std::vector<std::size_t>& rows, const std::array<std::size_t, 2>& counts,
                   double parent_entropy) const {
    Split best;
    best.gain = kGainEpsilon;
    const auto n = static_cast<double>(rows.size());
    std::vector<std::pair<double, Label>> column(rows.size());
    for (std::size_t c = 0; c < data_.cols(); ++c) {
      for (std::size_t i = 0; i < rows.size(); ++i) {
        column[i] = {data_.at(rows[i], c), data_.labels()[rows[i]]};
      }
      std::sort(column.begin(), column.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      std::array<std::size_t, 2> left{0, 0};
      for (std::size_t i = 0; i + 1 < column.size(); ++i) {
        ++left[label_index(column[i].second)];
        const double lo = column[i].first;
        const double hi = column[i + 1].first;
        if (lo == hi) continue;
        const std::array<std::size_t, 2> right{counts[0] - left[0], counts[1] - left[1]};
        const auto nl = static_cast<double>(i + 1);
        const double gain = parent_entropy - (nl / n) * entropy_from_counts(left) -
                            ((n - nl) / n) * entropy_from_counts(right);
        if (gain > best.gain + (best.feature < 0 ? 0.0 : kGainEpsilon)) {
          double threshold = lo + (hi - lo) / 2.0;
          if (!(threshold < hi)) threshold = lo;
          best = Split{static_cast<int>(c), threshold, gain};
        }
      }
    }
    return best;
  }

  const FeatureMatrix& data_;
  const TreeConfig& cfg_;
  std::vector<TreeNode> nodes_;
};

}  // namespace

Label TreeModel::predict_row(std::span<const double> x) const {
  std::size_t i = 0;
  while (!nodes[i].is_leaf()) {
    const auto& n = nodes[i];
    i = static_cast<std::size_t>(x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left
                                                                                       : n.right);
  }
  return nodes[i].label;
}

std::size_t TreeModel::depth() const {
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
  std::size_t deepest = 0;
  while (!stack.empty()) {
    auto [i, d] = stack.back();
    stack.pop_back();
    deepest = std::max(deepest, d);
    if (!nodes[i].is_leaf()) {
      stack.emplace_back(static_cast<std::size_t>(nodes[i].left), d + 1);
      stack.emplace_back(static_cast<std::size_t>(nodes[i].right), d + 1);
    }
  }
  return deepest;
}

TrainedModel fit_tree(const FeatureMatrix& train, const TreeConfig& cfg) {
  validate(cfg);
  if (train.rows() == 0) throw Error(ErrorCode::kEmptyTrainingSet, "tree needs at least one row");
  TreeModel tree;
  tree.config = cfg;
  tree.nodes = TreeBuilder(train, cfg).build();
  return TrainedModel{train.schema().names(), std::nullopt, std::move(tree)};
}

}  // namespace erpclass
