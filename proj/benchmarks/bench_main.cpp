#include <benchmark/benchmark.h>

#include "erpclass/ablation.hpp"
#include "erpclass/classifiers.hpp"
#include "erpclass/entropy.hpp"
#include "erpclass/evaluation.hpp"
#include "erpclass/preprocessing.hpp"
#include "erpclass/synthetic.hpp"
#include "erpclass/table_io.hpp"

namespace {

using namespace erpclass;

FeatureMatrix cohort(std::size_t trials, double effect = 1.0) {
  const auto c = generate(SynthConfig{.effect_size = effect, .trials_per_subject = trials});
  return merge(c.erp, c.eeg, c.demographics);
}

void BM_TreeFit(benchmark::State& state) {
  const auto m = cohort(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fit_tree(m, {}));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m.rows()));
}
BENCHMARK(BM_TreeFit)->Arg(1)->Arg(10)->Arg(50);

void BM_SvmFit(benchmark::State& state) {
  const auto raw = cohort(static_cast<std::size_t>(state.range(0)));
  const auto m = apply_standardizer(fit_standardizer(raw), raw);
  for (auto _ : state) benchmark::DoNotOptimize(fit_svm(m, {}));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m.rows()));
}
BENCHMARK(BM_SvmFit)->Arg(1)->Arg(5)->Arg(20);

void BM_KnnPredict(benchmark::State& state) {
  const auto raw = cohort(static_cast<std::size_t>(state.range(0)));
  const auto model = fit_model(raw, {KnnConfig{5}, true});
  for (auto _ : state) benchmark::DoNotOptimize(predict(model, raw));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(raw.rows()));
}
BENCHMARK(BM_KnnPredict)->Arg(1)->Arg(10);

void BM_KnnAutoK(benchmark::State& state) {
  const auto raw = cohort(static_cast<std::size_t>(state.range(0)));
  const auto m = apply_standardizer(fit_standardizer(raw), raw);
  for (auto _ : state) benchmark::DoNotOptimize(resolve_knn_k(m));
}
BENCHMARK(BM_KnnAutoK)->Arg(1)->Arg(10);

void BM_RankFeatures(benchmark::State& state) {
  const auto m = cohort(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rank_features(m, {10}));
}
BENCHMARK(BM_RankFeatures)->Arg(1)->Arg(50);

void BM_EvaluateTenFold(benchmark::State& state) {
  const auto m = cohort(5);
  const ModelSpec specs[] = {{TreeConfig{}, true}, {KnnConfig{}, true}, {SvmConfig{}, true}};
  const auto& spec = specs[state.range(0)];
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(m, spec, {}));
  state.SetLabel(model_name(spec.config));
}
BENCHMARK(BM_EvaluateTenFold)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_LeaveOneOutTree(benchmark::State& state) {
  const auto m = cohort(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_leave_one_out(m, {TreeConfig{}, true}, {}, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_LeaveOneOutTree)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
