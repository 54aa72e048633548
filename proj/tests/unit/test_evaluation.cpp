#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "erpclass/error.hpp"
#include "erpclass/evaluation.hpp"
#include "fixtures.hpp"

namespace erpclass {
namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no erpclass::Error thrown";
  return ErrorCode::kIoError;
}

void expect_partition(const std::vector<Fold>& folds, std::size_t n, bool kfold = true) {
  std::vector<int> seen(n, 0);
  for (const auto& f : folds) {
    EXPECT_TRUE(std::is_sorted(f.train.begin(), f.train.end()));
    EXPECT_TRUE(std::is_sorted(f.test.begin(), f.test.end()));
    EXPECT_EQ(f.train.size() + f.test.size(), n);
    std::set<std::size_t> all(f.train.begin(), f.train.end());
    all.insert(f.test.begin(), f.test.end());
    EXPECT_EQ(all.size(), n);
    for (auto i : f.test) ++seen[i];
  }
  if (kfold) {
    for (int s : seen) EXPECT_EQ(s, 1);
  }
}

TEST(Split, TenRowsFiveFoldsStratified) {
  std::vector<Label> labels = {Label::SZ, Label::HC, Label::SZ, Label::SZ, Label::HC,
                               Label::SZ, Label::HC, Label::SZ, Label::SZ, Label::HC};
  const auto m = fixture::matrix(1, std::vector<double>(10, 0.0), labels);
  const auto folds = split(m, {SplitMode::kTrial, KFold{5, true}, 42});
  ASSERT_EQ(folds.size(), 5u);
  expect_partition(folds, 10);
  for (const auto& f : folds) {
    EXPECT_EQ(f.test.size(), 2u);
    double sz = 0;
    for (auto i : f.test) sz += labels[i] == Label::SZ;
    EXPECT_LE(std::abs(sz - 2 * 0.6), 1.0);
    EXPECT_LE(std::abs((2 - sz) - 2 * 0.4), 1.0);
  }
}

TEST(Split, StratifiedRatioWithinOneRow) {
  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 20 + rng.below(100);
    const auto m = fixture::random_matrix(rng, n, 1);
    const std::size_t k = 2 + rng.below(9);
    double sz_total = 0;
    for (Label l : m.labels()) sz_total += l == Label::SZ;
    const auto folds = split(m, {SplitMode::kTrial, KFold{k, true}, rng.next()});
    expect_partition(folds, n);
    for (const auto& f : folds) {
      double sz = 0;
      for (auto i : f.test) sz += m.labels()[i] == Label::SZ;
      const double expect = sz_total / static_cast<double>(n) * static_cast<double>(f.test.size());
      EXPECT_LE(std::abs(sz - expect), 1.0);
    }
  }
}

TEST(Split, SubjectHoldoutWithOneSubjectIsInfeasible) {
  const auto m = fixture::matrix(1, {1, 2, 3, 4}, {Label::SZ, Label::HC, Label::SZ, Label::HC},
                                 {"p", "p", "p", "p"});
  EXPECT_EQ(code_of([&] { split(m, {SplitMode::kSubject, Holdout{0.25}, 1}); }),
            ErrorCode::kInfeasibleStratification);
}

TEST(Split, Errors) {
  const auto tiny = fixture::matrix(1, {1, 2, 3}, {Label::SZ, Label::HC, Label::SZ});
  EXPECT_EQ(code_of([&] { split(tiny, {SplitMode::kTrial, KFold{5, true}, 1}); }),
            ErrorCode::kTooFewRows);
  const auto one = fixture::matrix(1, {1, 2, 3}, {Label::SZ, Label::SZ, Label::SZ});
  EXPECT_EQ(code_of([&] { split(one, {SplitMode::kTrial, KFold{2, true}, 1}); }),
            ErrorCode::kSingleClass);
  EXPECT_EQ(code_of([&] { split(tiny, {SplitMode::kTrial, Holdout{1.5}, 1}); }),
            ErrorCode::kInvalidConfig);
  EXPECT_EQ(code_of([&] { split(tiny, {SplitMode::kTrial, KFold{1, true}, 1}); }),
            ErrorCode::kInvalidConfig);
}

TEST(Split, SubjectLevelEveryoneTestedOnce) {
  const auto m = fixture::synth_matrix(SynthConfig{.trials_per_subject = 3, .seed = 2});
  ASSERT_EQ(m.rows(), 243u);
  const auto folds = split(m, {SplitMode::kSubject, KFold{10, true}, 42});
  ASSERT_EQ(folds.size(), 10u);
  expect_partition(folds, m.rows());
  std::map<std::string, int> tested;
  for (const auto& f : folds) {
    std::set<std::string> train_ids, test_ids;
    for (auto i : f.train) train_ids.insert(m.subject_ids()[i]);
    for (auto i : f.test) test_ids.insert(m.subject_ids()[i]);
    for (const auto& s : test_ids) {
      EXPECT_FALSE(train_ids.contains(s)) << s;
      ++tested[s];
    }
  }
  EXPECT_EQ(tested.size(), 81u);
  for (const auto& [s, n] : tested) EXPECT_EQ(n, 1) << s;
}

TEST(Split, HoldoutIsStratifiedAndSeeded) {
  const auto m = fixture::synth_matrix(SynthConfig{.seed = 3});
  const SplitPolicy p{SplitMode::kTrial, Holdout{0.2}, 5};
  const auto folds = split(m, p);
  ASSERT_EQ(folds.size(), 1u);
  expect_partition(folds, 81, false);
  std::size_t sz = 0;
  for (auto i : folds[0].test) sz += m.labels()[i] == Label::SZ;
  EXPECT_EQ(sz, 10u);                        // round(0.2 * 49)
  EXPECT_EQ(folds[0].test.size() - sz, 6u);  // round(0.2 * 32)
  EXPECT_EQ(split(m, p)[0].test, folds[0].test);
  EXPECT_NE(split(m, {SplitMode::kTrial, Holdout{0.2}, 6})[0].test, folds[0].test);
}

TEST(Evaluate, AccuracyIsMeanOfFolds) {
  const auto m = fixture::synth_matrix(SynthConfig{.effect_size = 1.0, .seed = 4});
  const auto r = evaluate(m, {TreeConfig{}, true}, {SplitMode::kTrial, KFold{10, true}, 1});
  ASSERT_EQ(r.per_fold.size(), 10u);
  const double mean = std::accumulate(r.per_fold.begin(), r.per_fold.end(), 0.0) / 10.0;
  EXPECT_DOUBLE_EQ(r.accuracy, mean);
  for (double a : r.per_fold) {
    EXPECT_GE(a, 0.0);
    EXPECT_LE(a, 1.0);
  }
  EXPECT_EQ(r.total_test(), 81u);
  const auto& c = r.confusion;
  EXPECT_EQ(c.tp + c.tn + c.fp + c.fn, 81u);
  EXPECT_EQ(c.tp + c.fn, 49u);
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(r.n_train[i] + r.n_test[i], 81u);
}

TEST(Evaluate, DeterministicAndThreadIndependent) {
  const auto m = fixture::synth_matrix(SynthConfig{.effect_size = 0.8, .seed = 5});
  for (const ModelSpec& spec :
       {ModelSpec{TreeConfig{}, true}, ModelSpec{KnnConfig{}, true}, ModelSpec{SvmConfig{}, true}}) {
    const SplitPolicy p{SplitMode::kSubject, KFold{5, true}, 9};
    const auto a = evaluate(m, spec, p, 1);
    const auto b = evaluate(m, spec, p, 4);
    EXPECT_EQ(a.per_fold, b.per_fold);
    EXPECT_EQ(a.confusion, b.confusion);
    EXPECT_EQ(eval_to_json(a), eval_to_json(b));
  }
}

TEST(Evaluate, StrongEffectTreeFiveFold) {
  const auto m = fixture::synth_matrix(SynthConfig{.effect_size = 3.0, .trials_per_subject = 5, .seed = 6});
  const auto r = evaluate(m, {TreeConfig{}, true}, {SplitMode::kTrial, KFold{5, true}, 42});
  EXPECT_GE(r.accuracy, 0.95);
}

TEST(Evaluate, PermutedLabelsAreAtChance) {
  for (const ModelSpec& spec :
       {ModelSpec{TreeConfig{}, true}, ModelSpec{KnnConfig{}, true}, ModelSpec{SvmConfig{}, true}}) {
    double total = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      auto m = fixture::synth_matrix(SynthConfig{.n_hc = 40, .n_sz = 40, .effect_size = 3.0,
                                                 .seed = 100 + seed});
      auto labels = m.labels();
      Rng rng(seed);
      rng.shuffle(std::span<Label>(labels));
      total += evaluate(m.with_labels(labels), spec, {SplitMode::kSubject, KFold{5, true}, seed})
                   .accuracy;
    }
    const double mean = total / 10.0;
    EXPECT_GE(mean, 0.35) << model_name(spec.config);
    EXPECT_LE(mean, 0.65) << model_name(spec.config);
  }
}

TEST(Evaluate, SerializationShapes) {
  const auto m = fixture::synth_matrix(SynthConfig{.seed = 7});
  const auto r = evaluate(m, {KnnConfig{3}, true}, {SplitMode::kTrial, KFold{3, true}, 8});
  EXPECT_EQ(eval_csv_header(),
            "model,group,split,scheme,seed,accuracy,folds,n_test_total,tp,tn,fp,fn\n");
  const auto row = eval_to_csv_row(r, "ALL");
  EXPECT_EQ(row.rfind("knn,ALL,trial,kfold:3,8,", 0), 0u) << row;
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), 11);
  EXPECT_EQ(scheme_to_string({SplitMode::kTrial, Holdout{0.2}, 1}), "holdout:0.2");

  const auto grid = results_grid_csv({{"dt", DatasetGroup::kAll, 0.5},
                                      {"svm", DatasetGroup::kErpOnly, 0.25}});
  EXPECT_EQ(grid, "model,ERP,EEG_demographic,ALL\nsvm,0.25,,\ndt,,,0.5\nknn,,,\n");
}

}  // namespace
}  // namespace erpclass
