// Soft-margin C-SVC dual solved by sequential minimal optimization with
// second-order working-set selection (Fan, Chen and Lin, JMLR 2005):
//
//   min_a  1/2 a'Qa - e'a   s.t.  y'a = 0,  0 <= a_i <= C,
//   Q_ij = y_i y_j K(x_i, x_j).
//
// Working pair: i maximizes -y_i G_i over I_up (lowest index on ties); j
// minimizes the second-order objective decrease over I_low (lowest index on
// ties). Stops when max_{I_up} -y G - min_{I_low} -y G <= tolerance.

#include <algorithm>
#include <cmath>
#include <limits>

#include "erpclass/classifiers.hpp"
#include "erpclass/error.hpp"

namespace erpclass {

namespace {

constexpr double kTau = 1e-12;
// Full kernel matrices up to this many entries are precomputed.
constexpr std::size_t kMaxCachedEntries = std::size_t{1} << 24;

class KernelRows {
 public:
  KernelRows(const FeatureMatrix& x, double gamma) : x_(x), gamma_(gamma), n_(x.rows()) {
    if (n_ * n_ <= kMaxCachedEntries) {
      full_.resize(n_ * n_);
      for (std::size_t i = 0; i < n_; ++i) {
        full_[i * n_ + i] = 1.0;
        for (std::size_t j = 0; j < i; ++j) {
          const double k = rbf_kernel(x_.row(i), x_.row(j), gamma_);
          full_[i * n_ + j] = k;
          full_[j * n_ + i] = k;
        }
      }
    }
  }

  std::span<const double> row(std::size_t i) {
    if (!full_.empty()) return {full_.data() + i * n_, n_};
    scratch_.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) scratch_[j] = rbf_kernel(x_.row(i), x_.row(j), gamma_);
    return scratch_;
  }

 private:
  const FeatureMatrix& x_;
  double gamma_;
  std::size_t n_;
  std::vector<double> full_;
  std::vector<double> scratch_;
};

double scale_gamma(const FeatureMatrix& train) {
  double var_sum = 0.0;
  const auto n = static_cast<double>(train.rows());
  for (std::size_t c = 0; c < train.cols(); ++c) {
    double mean = 0.0;
    for (std::size_t r = 0; r < train.rows(); ++r) mean += train.at(r, c);
    mean /= n;
    double ss = 0.0;
    for (std::size_t r = 0; r < train.rows(); ++r) {
      const double d = train.at(r, c) - mean;
      ss += d * d;
    }
    var_sum += ss / n;
  }
  const double mean_var = var_sum / static_cast<double>(train.cols());
  if (!(mean_var > 0.0)) return 1.0;
  return 1.0 / (static_cast<double>(train.cols()) * mean_var);
}

}  // namespace

double SvmModel::decision_value(std::span<const double> x) const {
  double f = bias;
  for (std::size_t i = 0; i < dual_coef.size(); ++i) {
    f += dual_coef[i] *
         rbf_kernel(std::span<const double>(support_vectors.data() + i * n_features, n_features),
                    x, gamma);
  }
  return f;
}

Label SvmModel::predict_row(std::span<const double> x) const {
  return decision_value(x) > 0.0 ? Label::SZ : Label::HC;
}

TrainedModel fit_svm(const FeatureMatrix& train, const SvmConfig& cfg) {
  validate(cfg);
  const std::size_t n = train.rows();
  if (n < 2) throw Error(ErrorCode::kTooFewRows, "SVM needs at least 2 rows");
  std::vector<double> y(n);
  std::size_t positives = 0;
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = train.labels()[i] == Label::SZ ? 1.0 : -1.0;
    positives += y[i] > 0;
  }
  if (positives == 0 || positives == n) {
    throw Error(ErrorCode::kSingleClassTraining, "SVM training data has a single class");
  }

  const double gamma = cfg.gamma ? *cfg.gamma : scale_gamma(train);
  const double C = cfg.C;
  KernelRows kernel(train, gamma);

  std::vector<double> alpha(n, 0.0);
  std::vector<double> grad(n, -1.0);
  auto in_up = [&](std::size_t t) {
    return (y[t] > 0 && alpha[t] < C) || (y[t] < 0 && alpha[t] > 0);
  };
  auto in_low = [&](std::size_t t) {
    return (y[t] > 0 && alpha[t] > 0) || (y[t] < 0 && alpha[t] < C);
  };

  const std::size_t budget = cfg.max_passes * n;
  std::size_t iter = 0;
  bool converged = false;
  std::vector<double> ki_copy(n);
  while (true) {
    // Working-set selection.
    double gmax = -std::numeric_limits<double>::infinity();
    std::size_t i = n;
    for (std::size_t t = 0; t < n; ++t) {
      if (in_up(t) && -y[t] * grad[t] > gmax) {
        gmax = -y[t] * grad[t];
        i = t;
      }
    }
    double gmin = std::numeric_limits<double>::infinity();
    std::size_t j = n;
    double best_obj = std::numeric_limits<double>::infinity();
    const std::span<const double> ki = i < n ? kernel.row(i) : std::span<const double>{};
    if (i < n) std::copy(ki.begin(), ki.end(), ki_copy.begin());
    for (std::size_t t = 0; t < n; ++t) {
      if (!in_low(t)) continue;
      const double v = -y[t] * grad[t];
      gmin = std::min(gmin, v);
      const double diff = gmax - v;
      if (diff > 0.0) {
        double quad = 2.0 - 2.0 * ki_copy[t];  // K_ii + K_tt - 2 K_it with K_ii = 1
        if (quad <= 0.0) quad = kTau;
        const double obj = -(diff * diff) / quad;
        if (obj < best_obj) {
          best_obj = obj;
          j = t;
        }
      }
    }
    if (i == n || j == n || gmax - gmin <= cfg.tolerance) {
      converged = true;
      break;
    }
    if (iter >= budget) break;
    ++iter;

    const std::span<const double> kj = kernel.row(j);
    const double kij = ki_copy[j];
    const double old_ai = alpha[i];
    const double old_aj = alpha[j];
    if (y[i] != y[j]) {
      double quad = 2.0 - 2.0 * kij;  // Q_ii + Q_jj + 2 Q_ij with Q_ij = -K_ij
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0.0) {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = -diff;
      }
      if (diff > 0.0) {
        if (alpha[i] > C) {
          alpha[i] = C;
          alpha[j] = C - diff;
        }
      } else if (alpha[j] > C) {
        alpha[j] = C;
        alpha[i] = C + diff;
      }
    } else {
      double quad = 2.0 - 2.0 * kij;
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > C) {
        if (alpha[i] > C) {
          alpha[i] = C;
          alpha[j] = sum - C;
        }
      } else if (alpha[j] < 0.0) {
        alpha[j] = 0.0;
        alpha[i] = sum;
      }
      if (sum > C) {
        if (alpha[j] > C) {
          alpha[j] = C;
          alpha[i] = sum - C;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = sum;
      }
    }

    const double dai = alpha[i] - old_ai;
    const double daj = alpha[j] - old_aj;
    for (std::size_t t = 0; t < n; ++t) {
      grad[t] += y[t] * (y[i] * ki_copy[t] * dai + y[j] * kj[t] * daj);
    }
  }

  // Bias from free variables, or the midpoint of the feasible interval.
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double free_sum = 0.0;
  std::size_t n_free = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = y[t] * grad[t];
    const bool at_upper = alpha[t] >= C;
    const bool at_lower = alpha[t] <= 0.0;
    if (at_upper) {
      if (y[t] < 0) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else if (at_lower) {
      if (y[t] > 0) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else {
      ++n_free;
      free_sum += yg;
    }
  }
  const double rho = n_free > 0 ? free_sum / static_cast<double>(n_free) : (ub + lb) / 2.0;

  SvmModel model;
  model.config = cfg;
  model.gamma = gamma;
  model.n_features = train.cols();
  model.bias = -rho;
  model.converged = converged;
  model.iterations = iter;
  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] > 0.0) {
      auto r = train.row(t);
      model.support_vectors.insert(model.support_vectors.end(), r.begin(), r.end());
      model.dual_coef.push_back(alpha[t] * y[t]);
    }
  }
  return TrainedModel{train.schema().names(), std::nullopt, std::move(model)};
}

}  // namespace erpclass
