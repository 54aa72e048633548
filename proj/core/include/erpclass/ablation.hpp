#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "erpclass/entropy.hpp"
#include "erpclass/evaluation.hpp"

namespace erpclass {

// leave_one_out: drop each feature alone, restoring it afterwards.
// entropy_incremental: drop features cumulatively, highest entropy first,
// until one remains.
enum class AblationMode { kLeaveOneOut, kEntropyIncremental };

std::string_view to_string(AblationMode mode);

struct AblationRecord {
  std::size_t step = 0;  // 1-based
  std::string removed;   // feature removed at this step
  std::size_t remaining_count = 0;
  double accuracy = 0.0;

  friend bool operator==(const AblationRecord&, const AblationRecord&) = default;
};

struct AblationReport {
  AblationMode mode = AblationMode::kLeaveOneOut;
  double baseline_accuracy = 0.0;
  std::vector<AblationRecord> records;
  ModelSpec spec;
  SplitPolicy policy;
  std::optional<BinningConfig> bins;  // entropy_incremental only
  EntropyRanking ranking;             // entropy_incremental only
};

// Every evaluation shares the same folds: the split depends only on labels,
// subject ids and the policy seed. Throws TooFewColumns below two features.
AblationReport run_leave_one_out(const FeatureMatrix& m, const ModelSpec& spec,
                                 const SplitPolicy& policy, std::size_t threads = 1);

// The ranking is computed once on the full matrix before any removal.
AblationReport run_entropy_incremental(const FeatureMatrix& m, const ModelSpec& spec,
                                       const SplitPolicy& policy, const BinningConfig& bins,
                                       std::size_t threads = 1);

std::string report_to_csv(const AblationReport& report);
std::string report_to_json(const AblationReport& report);
// "step,accuracy" with step 0 holding the baseline.
std::string report_plot_data(const AblationReport& report);

}  // namespace erpclass
