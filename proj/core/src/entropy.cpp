#include "erpclass/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "erpclass/error.hpp"
#include "erpclass/table_io.hpp"

namespace erpclass {

double entropy(std::span<const double> probabilities) {
  double total = 0.0;
  for (double p : probabilities) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw Error(ErrorCode::kInvalidDistribution, "probability " + format_number(p) + " is invalid");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidDistribution,
                "probabilities sum to " + format_number(total));
  }
  double e = 0.0;
  for (double p : probabilities) {
    if (p > 0.0) e -= p * std::log2(p);
  }
  return std::max(e, 0.0);
}

double entropy_from_counts(std::span<const std::size_t> counts) {
  std::size_t n = 0;
  for (auto c : counts) n += c;
  if (n == 0) return 0.0;
  double e = 0.0;
  for (auto c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(n);
    e -= p * std::log2(p);
  }
  return std::max(e, 0.0);
}

EntropyScore column_entropy(const FeatureMatrix& m, const std::string& column,
                            const BinningConfig& cfg) {
  const std::size_t c = m.schema().index_of(column);
  const auto values = m.column(c);
  const auto bins = discretize_column(values, cfg);
  std::vector<std::size_t> counts(cfg.bin_count, 0);
  for (auto b : bins) ++counts[b];
  std::vector<double> p(cfg.bin_count);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    p[i] = static_cast<double>(counts[i]) / static_cast<double>(bins.size());
  }
  return EntropyScore{column, entropy(p)};
}

EntropyRanking rank_features(const FeatureMatrix& m, const BinningConfig& cfg) {
  EntropyRanking ranking;
  ranking.reserve(m.cols());
  for (const auto& col : m.schema().columns()) {
    ranking.push_back(column_entropy(m, col.name, cfg));
  }
  std::stable_sort(ranking.begin(), ranking.end(),
                   [](const EntropyScore& a, const EntropyScore& b) {
                     return a.entropy_bits > b.entropy_bits;
                   });
  return ranking;
}

std::string ranking_to_csv(const EntropyRanking& ranking) {
  std::ostringstream out;
  out << "column,entropy_bits\n";
  for (const auto& s : ranking) out << s.column << ',' << format_number(s.entropy_bits) << '\n';
  return out.str();
}

}  // namespace erpclass
