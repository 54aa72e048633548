#include "erpclass/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include <json.hpp>

#include "erpclass/error.hpp"
#include "erpclass/random.hpp"

namespace erpclass {

namespace {

struct ColumnModel {
  double mean;
  double sd;
};

ColumnModel erp_model(ErpComponent c) {
  switch (c) {
    case ErpComponent::B0: return {0.0, 1.5};
    case ErpComponent::N100: return {-4.0, 2.0};
    case ErpComponent::P200: return {5.0, 2.0};
    case ErpComponent::B1: return {0.5, 1.5};
  }
  return {0.0, 1.0};
}

constexpr ColumnModel kRawElectrode{0.0, 10.0};
constexpr ColumnModel kIti{1500.0, 250.0};
constexpr ColumnModel kTime{100.0, 20.0};
constexpr ColumnModel kAge{40.0, 10.0};
constexpr ColumnModel kEducation{14.0, 2.5};

std::string subject_id(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "S%03zu", i + 1);
  return buf;
}

}  // namespace

void validate(const SynthConfig& cfg) {
  if (cfg.n_hc < 1 || cfg.n_sz < 1) {
    throw Error(ErrorCode::kInvalidConfig, "n_hc and n_sz must be >= 1");
  }
  if (!(cfg.effect_size >= 0.0) || !std::isfinite(cfg.effect_size)) {
    throw Error(ErrorCode::kInvalidConfig, "effect_size must be finite and >= 0");
  }
  if (cfg.trials_per_subject < 1) {
    throw Error(ErrorCode::kInvalidConfig, "trials_per_subject must be >= 1");
  }
  if (cfg.n100_informative < 1 || cfg.n100_informative > kElectrodes.size()) {
    throw Error(ErrorCode::kInvalidConfig, "n100_informative must be in [1, 9]");
  }
}

SyntheticCohort generate(const SynthConfig& cfg) {
  validate(cfg);
  Rng rng(cfg.seed);
  const std::size_t n = cfg.n_hc + cfg.n_sz;
  std::vector<Label> classes(cfg.n_hc, Label::HC);
  classes.insert(classes.end(), cfg.n_sz, Label::SZ);
  rng.shuffle(std::span<Label>(classes));

  const double minor_shift = cfg.noise_dims_informative ? cfg.effect_size / 4.0 : 0.0;
  auto draw = [&](ColumnModel m, double shift_sd, bool hc) {
    return m.mean + (hc ? shift_sd * m.sd : 0.0) + m.sd * rng.normal();
  };

  SyntheticCohort out;
  out.erp.kind = TableKind::kErpAverages;
  out.eeg.kind = TableKind::kEegTrials;
  out.demographics.kind = TableKind::kDemographics;
  out.erp.header = canonical_header(TableKind::kErpAverages);
  out.eeg.header = canonical_header(TableKind::kEegTrials);
  out.demographics.header = canonical_header(TableKind::kDemographics);

  for (std::size_t s = 0; s < n; ++s) {
    const std::string id = subject_id(s);
    const Label label = classes[s];
    const bool hc = label == Label::HC;

    RawRow demo{id, label, {}};
    demo.values.push_back(std::max(18.0, std::round(draw(kAge, 0.0, hc))));
    demo.values.push_back(rng.uniform() < 0.5 ? 0.0 : 1.0);
    demo.values.push_back(std::max(6.0, std::round(draw(kEducation, 0.0, hc))));
    out.demographics.rows.push_back(std::move(demo));

    for (std::size_t t = 0; t < cfg.trials_per_subject; ++t) {
      RawRow erp{id, label, {}};
      erp.values.push_back(draw(kIti, 0.0, hc));
      erp.values.push_back(draw(kTime, 0.0, hc));
      for (std::size_t e = 0; e < kElectrodes.size(); ++e) {
        for (ErpComponent c : kErpComponents) {
          double shift = minor_shift;
          if (c == ErpComponent::N100) shift = e < cfg.n100_informative ? cfg.effect_size : 0.0;
          erp.values.push_back(draw(erp_model(c), shift, hc));
        }
      }
      out.erp.rows.push_back(std::move(erp));

      RawRow eeg{id, label, {}};
      for (std::size_t e = 0; e < kElectrodes.size(); ++e) {
        eeg.values.push_back(draw(kRawElectrode, minor_shift, hc));
      }
      out.eeg.rows.push_back(std::move(eeg));
    }
  }
  return out;
}

double effective_separation(const SynthConfig& cfg) {
  validate(cfg);
  double d2 = static_cast<double>(cfg.n100_informative) * cfg.effect_size * cfg.effect_size;
  if (cfg.noise_dims_informative) {
    const double minor = cfg.effect_size / 4.0;
    const double n_minor = 3.0 * kElectrodes.size() + kElectrodes.size();
    d2 += n_minor * minor * minor;
  }
  return std::sqrt(d2);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double bayes_accuracy(const SynthConfig& cfg) {
  const double d = effective_separation(cfg);
  const double n = static_cast<double>(cfg.n_hc + cfg.n_sz);
  const double pi_hc = static_cast<double>(cfg.n_hc) / n;
  const double pi_sz = static_cast<double>(cfg.n_sz) / n;
  if (d == 0.0) return std::max(pi_hc, pi_sz);
  if (std::isinf(d)) return 1.0;
  const double c = std::log(pi_sz / pi_hc) / d;
  return pi_hc * normal_cdf(d / 2.0 - c) + pi_sz * normal_cdf(d / 2.0 + c);
}

std::string synth_config_to_json(const SynthConfig& cfg) {
  nlohmann::ordered_json j;
  j["n_hc"] = cfg.n_hc;
  j["n_sz"] = cfg.n_sz;
  j["effect_size"] = cfg.effect_size;
  j["noise_dims_informative"] = cfg.noise_dims_informative;
  j["trials_per_subject"] = cfg.trials_per_subject;
  j["n100_informative"] = cfg.n100_informative;
  j["seed"] = cfg.seed;
  j["bayes_accuracy"] = bayes_accuracy(cfg);
  return j.dump(2) + "\n";
}

}  // namespace erpclass
