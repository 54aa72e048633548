#include "erpclass/evaluation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "erpclass/error.hpp"
#include "erpclass/random.hpp"
#include "erpclass/table_io.hpp"
#include "json_util.hpp"
#include "parallel.hpp"

namespace erpclass {

using nlohmann::ordered_json;

std::string_view to_string(SplitMode mode) {
  return mode == SplitMode::kTrial ? "trial" : "subject";
}

std::string scheme_to_string(const SplitPolicy& policy) {
  if (const auto* h = std::get_if<Holdout>(&policy.scheme)) {
    return "holdout:" + format_number(h->test_fraction);
  }
  return "kfold:" + std::to_string(std::get<KFold>(policy.scheme).folds);
}

namespace {

// A split unit is a row (trial mode) or a subject (subject mode).
struct Units {
  std::vector<std::vector<std::size_t>> rows;
  std::vector<Label> labels;
};

Units make_units(const FeatureMatrix& m, SplitMode mode) {
  Units u;
  if (mode == SplitMode::kTrial) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
      u.rows.push_back({r});
      u.labels.push_back(m.labels()[r]);
    }
    return u;
  }
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto [it, inserted] = index.emplace(m.subject_ids()[r], u.rows.size());
    if (inserted) {
      u.rows.emplace_back();
      u.labels.push_back(m.labels()[r]);
    }
    u.rows[it->second].push_back(r);
  }
  return u;
}

std::vector<Fold> folds_from_assignment(const FeatureMatrix& m, const Units& units,
                                        const std::vector<std::size_t>& fold_of,
                                        std::size_t n_folds) {
  std::vector<std::size_t> row_fold(m.rows());
  for (std::size_t u = 0; u < units.rows.size(); ++u) {
    for (auto r : units.rows[u]) row_fold[r] = fold_of[u];
  }
  std::vector<Fold> folds(n_folds);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t f = 0; f < n_folds; ++f) {
      (row_fold[r] == f ? folds[f].test : folds[f].train).push_back(r);
    }
  }
  return folds;
}

}  // namespace

std::vector<Fold> split(const FeatureMatrix& m, const SplitPolicy& policy) {
  const bool has_sz = std::count(m.labels().begin(), m.labels().end(), Label::SZ) > 0;
  const bool has_hc = std::count(m.labels().begin(), m.labels().end(), Label::HC) > 0;

  const Units units = make_units(m, policy.mode);
  const std::size_t n_units = units.rows.size();
  Rng rng(policy.seed);

  // Unit indices per class, each shuffled: SZ first, then HC.
  auto shuffled_by_class = [&] {
    std::array<std::vector<std::size_t>, 2> by_class;
    for (std::size_t u = 0; u < n_units; ++u) {
      by_class[units.labels[u] == Label::SZ ? 0 : 1].push_back(u);
    }
    for (auto& v : by_class) rng.shuffle(std::span<std::size_t>(v));
    return by_class;
  };

  if (const auto* kf = std::get_if<KFold>(&policy.scheme)) {
    if (kf->folds < 2) throw Error(ErrorCode::kInvalidConfig, "k-fold needs at least 2 folds");
    if (m.rows() < kf->folds) {
      throw Error(ErrorCode::kTooFewRows, std::to_string(m.rows()) + " rows for " +
                                              std::to_string(kf->folds) + " folds");
    }
    if (!has_sz || !has_hc) throw Error(ErrorCode::kSingleClass, "split needs both classes");
    if (n_units < kf->folds) {
      throw Error(ErrorCode::kInfeasibleStratification,
                  std::to_string(n_units) + " subjects for " + std::to_string(kf->folds) + " folds");
    }
    std::vector<std::size_t> fold_of(n_units);
    std::size_t next = 0;
    if (kf->stratified) {
      for (const auto& members : shuffled_by_class()) {
        for (auto u : members) fold_of[u] = next++ % kf->folds;
      }
    } else {
      std::vector<std::size_t> order(n_units);
      for (std::size_t u = 0; u < n_units; ++u) order[u] = u;
      rng.shuffle(std::span<std::size_t>(order));
      for (auto u : order) fold_of[u] = next++ % kf->folds;
    }
    return folds_from_assignment(m, units, fold_of, kf->folds);
  }

  const auto& ho = std::get<Holdout>(policy.scheme);
  if (!(ho.test_fraction > 0.0 && ho.test_fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "test_fraction must be in (0, 1)");
  }
  if (m.rows() < 2) throw Error(ErrorCode::kTooFewRows, "holdout needs at least 2 rows");
  if (!has_sz || !has_hc) throw Error(ErrorCode::kSingleClass, "split needs both classes");
  if (n_units < 2) {
    throw Error(ErrorCode::kInfeasibleStratification,
                "holdout needs at least 2 subjects, got " + std::to_string(n_units));
  }
  auto by_class = shuffled_by_class();
  std::vector<std::size_t> fold_of(n_units, 1);  // 0 = test, 1 = train
  std::size_t n_test = 0;
  for (auto& members : by_class) {
    const auto take = static_cast<std::size_t>(
        std::llround(ho.test_fraction * static_cast<double>(members.size())));
    for (std::size_t i = 0; i < take; ++i) fold_of[members[i]] = 0;
    n_test += take;
  }
  if (n_test == 0) {
    auto& bigger = by_class[0].size() >= by_class[1].size() ? by_class[0] : by_class[1];
    fold_of[bigger.front()] = 0;
    n_test = 1;
  }
  if (n_test == n_units) {
    throw Error(ErrorCode::kInfeasibleStratification, "holdout leaves no training subjects");
  }
  auto folds = folds_from_assignment(m, units, fold_of, 2);
  return {folds[0]};
}

std::size_t EvalResult::total_test() const {
  std::size_t t = 0;
  for (auto n : n_test) t += n;
  return t;
}

EvalResult evaluate(const FeatureMatrix& m, const ModelSpec& spec, const SplitPolicy& policy,
                    std::size_t threads) {
  validate(spec.config);
  const auto folds = split(m, policy);
  EvalResult result;
  result.spec = spec;
  result.policy = policy;
  result.per_fold.assign(folds.size(), 0.0);
  result.n_train.assign(folds.size(), 0);
  result.n_test.assign(folds.size(), 0);
  std::vector<ConfusionCounts> confusion(folds.size());

  detail::parallel_for(folds.size(), threads, [&](std::size_t f) {
    const FeatureMatrix train = m.take_rows(folds[f].train);
    const FeatureMatrix test = m.take_rows(folds[f].test);
    const TrainedModel model = fit_model(train, spec);
    const auto predicted = predict(model, test);
    ConfusionCounts c;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
      const bool truth_sz = test.labels()[i] == Label::SZ;
      const bool pred_sz = predicted[i] == Label::SZ;
      if (truth_sz && pred_sz) ++c.tp;
      else if (!truth_sz && !pred_sz) ++c.tn;
      else if (pred_sz) ++c.fp;
      else ++c.fn;
    }
    confusion[f] = c;
    result.n_train[f] = train.rows();
    result.n_test[f] = test.rows();
    result.per_fold[f] =
        static_cast<double>(c.tp + c.tn) / static_cast<double>(std::max<std::size_t>(test.rows(), 1));
  });

  double sum = 0.0;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    sum += result.per_fold[f];
    result.confusion.tp += confusion[f].tp;
    result.confusion.tn += confusion[f].tn;
    result.confusion.fp += confusion[f].fp;
    result.confusion.fn += confusion[f].fn;
  }
  result.accuracy = sum / static_cast<double>(folds.size());
  return result;
}

namespace detail {

ordered_json policy_to_json(const SplitPolicy& p) {
  ordered_json j;
  j["mode"] = to_string(p.mode);
  if (const auto* h = std::get_if<Holdout>(&p.scheme)) {
    j["scheme"] = "holdout";
    j["test_fraction"] = h->test_fraction;
  } else {
    const auto& k = std::get<KFold>(p.scheme);
    j["scheme"] = "kfold";
    j["folds"] = k.folds;
    j["stratified"] = k.stratified;
  }
  j["seed"] = p.seed;
  return j;
}

}  // namespace detail

std::string eval_to_json(const EvalResult& r) {
  ordered_json j;
  j["model"] = detail::spec_to_json(r.spec);
  j["split"] = detail::policy_to_json(r.policy);
  j["accuracy"] = r.accuracy;
  j["per_fold"] = r.per_fold;
  j["n_train"] = r.n_train;
  j["n_test"] = r.n_test;
  j["confusion"] = {{"tp", r.confusion.tp},
                    {"tn", r.confusion.tn},
                    {"fp", r.confusion.fp},
                    {"fn", r.confusion.fn}};
  return j.dump(2) + "\n";
}

std::string model_spec_to_json(const ModelSpec& spec) {
  return detail::spec_to_json(spec).dump(2) + "\n";
}

std::string split_policy_to_json(const SplitPolicy& policy) {
  return detail::policy_to_json(policy).dump(2) + "\n";
}

std::string eval_csv_header() {
  return "model,group,split,scheme,seed,accuracy,folds,n_test_total,tp,tn,fp,fn\n";
}

std::string eval_to_csv_row(const EvalResult& r, std::string_view group) {
  std::ostringstream out;
  out << model_name(r.spec.config) << ',' << group << ',' << to_string(r.policy.mode) << ','
      << scheme_to_string(r.policy) << ',' << r.policy.seed << ',' << format_number(r.accuracy)
      << ',' << r.per_fold.size() << ',' << r.total_test() << ',' << r.confusion.tp << ','
      << r.confusion.tn << ',' << r.confusion.fp << ',' << r.confusion.fn << '\n';
  return out.str();
}

std::string results_grid_csv(const std::vector<GridCell>& cells) {
  const std::array<std::string, 3> models = {"svm", "dt", "knn"};
  const std::array<DatasetGroup, 3> groups = {DatasetGroup::kErpOnly, DatasetGroup::kEegDemographic,
                                              DatasetGroup::kAll};
  std::ostringstream out;
  out << "model";
  for (auto g : groups) out << ',' << to_string(g);
  out << '\n';
  for (const auto& model : models) {
    out << model;
    for (auto g : groups) {
      out << ',';
      for (const auto& c : cells) {
        if (c.model == model && c.group == g) {
          out << format_number(c.accuracy);
          break;
        }
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace erpclass
