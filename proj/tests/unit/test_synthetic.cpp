#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "erpclass/error.hpp"
#include "erpclass/synthetic.hpp"
#include "erpclass/table_io.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace erpclass {
namespace {

std::vector<double> column_for(const FeatureMatrix& m, const std::string& name, Label label) {
  const std::size_t c = m.schema().index_of(name);
  std::vector<double> out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (m.labels()[r] == label) out.push_back(m.at(r, c));
  }
  return out;
}

// Optimal accuracy of a 1-D two-Gaussian problem with unit variance and
// separation d, by direct integration of max(prior * density).
double integrate_bayes(double d, double pi_hc, double pi_sz) {
  const double pi = std::acos(-1.0);
  auto phi = [&](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2 * pi); };
  const double lo = -12.0 - d, hi = 12.0 + d, h = 1e-4;
  double sum = 0.0;
  for (double x = lo; x < hi; x += h) sum += std::max(pi_hc * phi(x - d), pi_sz * phi(x)) * h;
  return sum;
}

TEST(Synth, DefaultCohortSize) {
  const auto c = generate(SynthConfig{.n_hc = 32, .n_sz = 49});
  EXPECT_EQ(c.demographics.rows.size(), 81u);
  EXPECT_EQ(c.erp.rows.size(), 81u);
  EXPECT_EQ(c.eeg.rows.size(), 81u);
  const auto m = merge(c.erp, c.eeg, c.demographics);
  std::size_t sz = 0;
  for (Label l : m.labels()) sz += l == Label::SZ;
  EXPECT_EQ(sz, 49u);
  EXPECT_EQ(m.rows() - sz, 32u);
}

TEST(Synth, TrialsPerSubject) {
  const auto c = generate(SynthConfig{.n_hc = 3, .n_sz = 4, .trials_per_subject = 5});
  EXPECT_EQ(c.erp.rows.size(), 35u);
  EXPECT_EQ(c.eeg.rows.size(), 35u);
  EXPECT_EQ(c.demographics.rows.size(), 7u);
}

TEST(Synth, SameSeedSameBytes) {
  auto text = [](const SynthConfig& cfg) {
    const auto c = generate(cfg);
    std::ostringstream out;
    write_table(out, c.erp);
    write_table(out, c.eeg);
    write_table(out, c.demographics);
    return out.str();
  };
  EXPECT_EQ(text(SynthConfig{.seed = 7}), text(SynthConfig{.seed = 7}));
  EXPECT_NE(text(SynthConfig{.seed = 7}), text(SynthConfig{.seed = 8}));
}

TEST(Synth, DemographicsArePlausible) {
  const auto m = fixture::synth_matrix(SynthConfig{.n_hc = 200, .n_sz = 200});
  for (std::size_t r = 0; r < m.rows(); ++r) {
    EXPECT_GE(m.at(r, 47), 18.0);
    EXPECT_TRUE(m.at(r, 48) == 0.0 || m.at(r, 48) == 1.0);
    EXPECT_GE(m.at(r, 49), 6.0);
    EXPECT_EQ(m.at(r, 47), std::round(m.at(r, 47)));
  }
}

TEST(Synth, InvalidConfig) {
  for (const SynthConfig& cfg :
       {SynthConfig{.n_hc = 0}, SynthConfig{.n_sz = 0}, SynthConfig{.effect_size = -1.0},
        SynthConfig{.trials_per_subject = 0}, SynthConfig{.n100_informative = 0},
        SynthConfig{.n100_informative = 10}}) {
    try {
      generate(cfg);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidConfig);
    }
    EXPECT_THROW(bayes_accuracy(cfg), Error);
  }
}

std::vector<std::string> n100_columns() {
  std::vector<std::string> out;
  for (Electrode e : kElectrodes) out.push_back(std::string(to_string(e)) + "_N100");
  return out;
}

TEST(Synth, NullEffectIsNotSignificant) {
  // Two-sided alpha = 0.01 on 9 columns x 20 seeds. With no effect, 8 or
  // more rejections out of 180 has probability below 1e-3.
  std::size_t rejections = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto m = fixture::synth_matrix(SynthConfig{.effect_size = 0.0, .seed = 1000 + seed});
    for (const auto& name : n100_columns()) {
      const double t =
          oracle::welch_t(column_for(m, name, Label::HC), column_for(m, name, Label::SZ));
      rejections += std::abs(t) > 2.65;
    }
  }
  EXPECT_LE(rejections, 7u);
}

TEST(Synth, NonInformativeColumnsMatchAcrossClasses) {
  std::size_t rejections = 0, tests = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto m = fixture::synth_matrix(SynthConfig{.effect_size = 3.0, .seed = 2000 + seed});
    for (const auto& col : m.schema().columns()) {
      if (col.component == ErpComponent::N100 || col.name == "gender") continue;
      const double t =
          oracle::welch_t(column_for(m, col.name, Label::HC), column_for(m, col.name, Label::SZ));
      rejections += std::abs(t) > 2.65;
      ++tests;
    }
  }
  // 40 columns x 20 seeds = 800 tests, expected 8 rejections at 1%.
  EXPECT_EQ(tests, 800u);
  EXPECT_LE(rejections, 18u);
}

TEST(Synth, StrongEffectSingleColumnThreshold) {
  const SynthConfig cfg{.n_hc = 1000, .n_sz = 1000, .effect_size = 3.0, .seed = 3};
  const auto m = fixture::synth_matrix(cfg);
  for (const auto& name : n100_columns()) {
    const auto hc = column_for(m, name, Label::HC);
    const auto sz = column_for(m, name, Label::SZ);
    double mh = 0, ms = 0;
    for (double x : hc) mh += x / static_cast<double>(hc.size());
    for (double x : sz) ms += x / static_cast<double>(sz.size());
    EXPECT_GT(mh, ms);
    const double thr = 0.5 * (mh + ms);
    std::size_t ok = 0;
    for (double x : hc) ok += x > thr;
    for (double x : sz) ok += x <= thr;
    const double acc = static_cast<double>(ok) / 2000.0;
    EXPECT_GE(acc, 0.90) << name;
    EXPECT_NEAR(acc, normal_cdf(1.5), 3 * std::sqrt(0.0668 * 0.9332 / 2000.0)) << name;
  }
}

TEST(Bayes, FrozenValues) {
  EXPECT_NEAR(normal_cdf(1.5), 0.9332, 1e-4);
  EXPECT_EQ(normal_cdf(0.0), 0.5);
  const SynthConfig single{.n_hc = 50, .n_sz = 50, .effect_size = 3.0, .n100_informative = 1};
  EXPECT_NEAR(bayes_accuracy(single), 0.9332, 1e-4);
  EXPECT_NEAR(bayes_accuracy(SynthConfig{.effect_size = 0.0}), 49.0 / 81.0, 1e-15);
  EXPECT_NEAR(bayes_accuracy(SynthConfig{.n_hc = 40, .n_sz = 10, .effect_size = 0.0}), 0.8, 1e-15);
  EXPECT_NEAR(bayes_accuracy(SynthConfig{.n_hc = 9, .n_sz = 9, .effect_size = 50.0}), 1.0, 1e-12);
}

TEST(Bayes, PriorAwareFormulaMatchesIntegration) {
  for (double e : {0.25, 0.5, 1.0, 2.0}) {
    for (std::size_t k : {1u, 4u, 9u}) {
      const SynthConfig cfg{.n_hc = 32, .n_sz = 49, .effect_size = e, .n100_informative = k};
      const double d = effective_separation(cfg);
      EXPECT_NEAR(d, e * std::sqrt(static_cast<double>(k)), 1e-12);
      EXPECT_NEAR(bayes_accuracy(cfg), integrate_bayes(d, 32.0 / 81.0, 49.0 / 81.0), 1e-6);
    }
  }
  const SynthConfig noisy{.effect_size = 1.0, .noise_dims_informative = true};
  EXPECT_NEAR(effective_separation(noisy), std::sqrt(9.0 + 36.0 / 16.0), 1e-12);
}

TEST(Bayes, MonotoneInEffect) {
  double prev = 0.0;
  for (double e = 0.0; e <= 4.0; e += 0.25) {
    const double b = bayes_accuracy(SynthConfig{.effect_size = e});
    EXPECT_GE(b, prev);
    EXPECT_LE(b, 1.0);
    prev = b;
  }
}

}  // namespace
}  // namespace erpclass
