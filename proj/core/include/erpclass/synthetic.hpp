#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "erpclass/table_io.hpp"

namespace erpclass {

// Two-class Gaussian cohort in the canonical schema. Every informative
// column has the same per-class standard deviation; HC means sit
// effect_size standard deviations above SZ (reduced N100 negativity).
struct SynthConfig {
  std::size_t n_hc = 32;
  std::size_t n_sz = 49;
  double effect_size = 1.0;
  // When set, every non-N100 ERP column and every raw electrode column also
  // carries a shift of effect_size / 4.
  bool noise_dims_informative = false;
  std::size_t trials_per_subject = 1;
  // How many N100 columns (in electrode order) carry the shift, 1..9.
  std::size_t n100_informative = 9;
  std::uint64_t seed = 42;

  friend bool operator==(const SynthConfig&, const SynthConfig&) = default;
};

// Throws InvalidConfig.
void validate(const SynthConfig& cfg);

struct SyntheticCohort {
  RawTable erp;
  RawTable eeg;
  RawTable demographics;
};

// Rows are i.i.d. given the class; ERP and EEG tables hold
// trials_per_subject rows per subject that pair by position.
SyntheticCohort generate(const SynthConfig& cfg);

// Mahalanobis separation of the two class means.
double effective_separation(const SynthConfig& cfg);

// Accuracy of the Bayes-optimal rule for the generator, priors included:
// pi_hc * Phi(d/2 - c) + pi_sz * Phi(d/2 + c), c = ln(pi_sz / pi_hc) / d.
double bayes_accuracy(const SynthConfig& cfg);

double normal_cdf(double x);

std::string synth_config_to_json(const SynthConfig& cfg);

}  // namespace erpclass
