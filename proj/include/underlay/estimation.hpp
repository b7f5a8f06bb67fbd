// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The underlay authors
#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "underlay/fading.hpp"
#include "underlay/pathloss.hpp"

namespace underlay {

struct Measurement {
  std::string link_id;
  double distance_m;  // > 0
  double rx_power_dbm;
};

struct SnrSampleSet {
  std::string node_id;
  Eigen::ArrayXd samples;  // linear SNR, all > 0; fits need at least 2
};

struct PathLossFit {
  LogDistanceParams params;
  double sigma_pl_db;  // RMS regression residual (denominator N)
};

struct FadingFit {
  SnrDist dist;
  double mse;  // CDF mean squared error against the empirical CDF
  bool m_clamped = false;  // Nakagami m hit the 0.5 physical floor
};

// Least squares on PL_i = tx_power - rx_power_i over x_i = 10 log10(d_i / d0):
// slope is the exponent n, intercept is pl_d0_db. Needs >= 2 distinct
// distances, else the regression is rank-deficient.
PathLossFit fit_log_distance_lse(std::span<const Measurement> measurements,
                                 double tx_power_dbm, double d0_m);

// Per-point exponents n_i = (PL_i - pl_d0_db) / (10 log10(d_i / d0)), feeding
// the shadowing normal fit. Points with d_i within 1% of d0 are dropped (the
// divisor vanishes there).
Eigen::ArrayXd invert_path_loss_exponents(std::span<const Measurement> measurements,
                                          double tx_power_dbm, const LogDistanceParams& fit);

// Gaussian MLE (variance denominator N). Needs >= 2 values with spread.
NormalParams fit_normal_mle(const Eigen::ArrayXd& values);

FadingFit fit_rayleigh_mle(const SnrSampleSet& set);

// Gamma-form Nakagami MLE: gamma_bar is the sample mean; m solves
// log(m) - digamma(m) = log(mean) - mean(log), Greenwood-Durand start plus
// Newton polish. m below 0.5 is clamped and flagged.
FadingFit fit_nakagami_mle(const SnrSampleSet& set);

// Right-continuous empirical CDF, F(x) = #{samples <= x} / N.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(const Eigen::ArrayXd& samples);
  double operator()(double x) const;
  const std::vector<double>& sorted_samples() const { return sorted_; }

 private:
  std::vector<double> sorted_;
};

// Mean over sample points of (model_cdf(x_i) - F_hat(x_i))^2. Sorts
// internally, so the value is independent of sample order.
template <typename Cdf>
double cdf_mse_against(Cdf&& model_cdf, const Eigen::ArrayXd& samples) {
  const EmpiricalCdf empirical(samples);
  const std::vector<double>& xs = empirical.sorted_samples();
  const double n = static_cast<double>(xs.size());
  double acc = 0.0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    while (j < xs.size() && xs[j] <= xs[i]) ++j;  // ties share the highest rank
    const double diff = model_cdf(xs[i]) - static_cast<double>(j) / n;
    acc += diff * diff;
  }
  return acc / n;
}

double cdf_mse(const SnrDist& model, const SnrSampleSet& set);

}  // namespace underlay
