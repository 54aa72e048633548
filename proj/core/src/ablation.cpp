#include "erpclass/ablation.hpp"

#include <set>
#include <sstream>

#include "erpclass/error.hpp"
#include "erpclass/table_io.hpp"
#include "json_util.hpp"
#include "parallel.hpp"

namespace erpclass {

using nlohmann::ordered_json;

std::string_view to_string(AblationMode mode) {
  return mode == AblationMode::kLeaveOneOut ? "leave_one_out" : "entropy_incremental";
}

namespace {

void require_two_features(const FeatureMatrix& m) {
  if (m.cols() < 2) {
    throw Error(ErrorCode::kTooFewColumns,
                "ablation needs at least 2 features, got " + std::to_string(m.cols()));
  }
}

// Evaluates the baseline and every removal set; results stay in input order.
void run_steps(const FeatureMatrix& m, const ModelSpec& spec, const SplitPolicy& policy,
               const std::vector<std::set<std::string>>& removals, std::size_t threads,
               AblationReport& report) {
  std::vector<double> accuracy(removals.size() + 1, 0.0);
  detail::parallel_for(removals.size() + 1, threads, [&](std::size_t i) {
    const FeatureMatrix reduced = i == 0 ? m : drop_columns(m, removals[i - 1]);
    accuracy[i] = evaluate(reduced, spec, policy).accuracy;
  });
  report.baseline_accuracy = accuracy[0];
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    report.records[i].accuracy = accuracy[i + 1];
  }
}

}  // namespace

AblationReport run_leave_one_out(const FeatureMatrix& m, const ModelSpec& spec,
                                 const SplitPolicy& policy, std::size_t threads) {
  require_two_features(m);
  AblationReport report;
  report.mode = AblationMode::kLeaveOneOut;
  report.spec = spec;
  report.policy = policy;
  std::vector<std::set<std::string>> removals;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const std::string& name = m.schema()[c].name;
    removals.push_back({name});
    report.records.push_back({c + 1, name, m.cols() - 1, 0.0});
  }
  run_steps(m, spec, policy, removals, threads, report);
  return report;
}

AblationReport run_entropy_incremental(const FeatureMatrix& m, const ModelSpec& spec,
                                       const SplitPolicy& policy, const BinningConfig& bins,
                                       std::size_t threads) {
  require_two_features(m);
  AblationReport report;
  report.mode = AblationMode::kEntropyIncremental;
  report.spec = spec;
  report.policy = policy;
  report.bins = bins;
  report.ranking = rank_features(m, bins);
  std::vector<std::set<std::string>> removals;
  std::set<std::string> removed;
  for (std::size_t s = 0; s + 1 < m.cols(); ++s) {
    removed.insert(report.ranking[s].column);
    removals.push_back(removed);
    report.records.push_back({s + 1, report.ranking[s].column, m.cols() - s - 1, 0.0});
  }
  run_steps(m, spec, policy, removals, threads, report);
  return report;
}

std::string report_to_csv(const AblationReport& report) {
  std::ostringstream out;
  out << "step,removed,remaining_count,accuracy\n";
  for (const auto& r : report.records) {
    out << r.step << ',' << r.removed << ',' << r.remaining_count << ','
        << format_number(r.accuracy) << '\n';
  }
  return out.str();
}

std::string report_to_json(const AblationReport& report) {
  ordered_json j;
  j["mode"] = to_string(report.mode);
  j["model"] = detail::spec_to_json(report.spec);
  j["split"] = detail::policy_to_json(report.policy);
  if (report.bins) {
    j["bins"] = {{"bin_count", report.bins->bin_count}, {"strategy", "equal_width"}};
    ordered_json ranking = ordered_json::array();
    for (const auto& s : report.ranking) {
      ranking.push_back({{"column", s.column}, {"entropy_bits", s.entropy_bits}});
    }
    j["ranking"] = std::move(ranking);
  }
  j["baseline_accuracy"] = report.baseline_accuracy;
  ordered_json records = ordered_json::array();
  for (const auto& r : report.records) {
    records.push_back({{"step", r.step},
                       {"removed", r.removed},
                       {"remaining_count", r.remaining_count},
                       {"accuracy", r.accuracy}});
  }
  j["records"] = std::move(records);
  return j.dump(2) + "\n";
}

std::string report_plot_data(const AblationReport& report) {
  std::ostringstream out;
  out << "step,accuracy\n0," << format_number(report.baseline_accuracy) << '\n';
  for (const auto& r : report.records) out << r.step << ',' << format_number(r.accuracy) << '\n';
  return out.str();
}

}  // namespace erpclass
