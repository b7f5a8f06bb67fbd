// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The underlay authors
#include "underlay/estimation.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "underlay/errors.hpp"
#include "underlay/special_functions.hpp"

namespace underlay {

namespace {

void check_measurements(std::span<const Measurement> measurements, double d0_m) {
  if (!(d0_m > 0.0)) throw std::domain_error("path loss fit: d0 must be > 0");
  for (const Measurement& m : measurements) {
    if (!(m.distance_m > 0.0)) {
      throw std::invalid_argument("path loss fit: distance must be > 0 (link " + m.link_id + ")");
    }
  }
}

void check_sample_set(const SnrSampleSet& set) {
  if (set.samples.size() < 2) {
    throw degeneracy_error("fading fit: node " + set.node_id + " has fewer than 2 SNR samples");
  }
  if (!(set.samples > 0.0).all()) {
    throw std::invalid_argument("fading fit: node " + set.node_id +
                                " has non-positive SNR samples");
  }
}

// Greenwood-Durand rational starts for the Gamma shape given
// s = log(mean) - mean(log).
double greenwood_durand_initial_m(double s) {
  if (s <= 0.5772) return (0.5000876 + 0.1648852 * s - 0.0544274 * s * s) / s;
  if (s <= 17.0) {
    return (8.898919 + 9.059950 * s + 0.9775373 * s * s) /
           (s * (17.79728 + 11.968477 * s + s * s));
  }
  return 1.0 / s;
}

}  // namespace

PathLossFit fit_log_distance_lse(std::span<const Measurement> measurements,
                                 double tx_power_dbm, double d0_m) {
  check_measurements(measurements, d0_m);
  const Eigen::Index n = static_cast<Eigen::Index>(measurements.size());
  if (n < 2) throw degeneracy_error("path loss fit: need at least 2 measurements");
  bool distances_vary = false;
  for (const Measurement& m : measurements) {
    if (m.distance_m != measurements[0].distance_m) {
      distances_vary = true;
      break;
    }
  }
  if (!distances_vary) {
    throw degeneracy_error("path loss fit: all distances identical, slope is unidentifiable");
  }

  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd pl(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = 10.0 * std::log10(measurements[i].distance_m / d0_m);
    pl(i) = tx_power_dbm - measurements[i].rx_power_dbm;
  }
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(pl);
  const double rms = std::sqrt((design * coef - pl).squaredNorm() / static_cast<double>(n));
  return PathLossFit{LogDistanceParams{coef(0), d0_m, coef(1)}, rms};
}

Eigen::ArrayXd invert_path_loss_exponents(std::span<const Measurement> measurements,
                                          double tx_power_dbm, const LogDistanceParams& fit) {
  check_measurements(measurements, fit.d0_m);
  std::vector<double> exponents;
  exponents.reserve(measurements.size());
  for (const Measurement& m : measurements) {
    const double ratio = m.distance_m / fit.d0_m;
    if (std::abs(ratio - 1.0) < 0.01) continue;
    const double pl = tx_power_dbm - m.rx_power_dbm;
    exponents.push_back((pl - fit.pl_d0_db) / (10.0 * std::log10(ratio)));
  }
  return Eigen::Map<const Eigen::ArrayXd>(exponents.data(),
                                          static_cast<Eigen::Index>(exponents.size()));
}

NormalParams fit_normal_mle(const Eigen::ArrayXd& values) {
  if (values.size() < 2) throw degeneracy_error("normal fit: need at least 2 values");
  const double mu = values.mean();
  const double variance = (values - mu).square().mean();
  if (!(variance > 0.0)) throw degeneracy_error("normal fit: values have no spread");
  return NormalParams{mu, std::sqrt(variance)};
}

FadingFit fit_rayleigh_mle(const SnrSampleSet& set) {
  check_sample_set(set);
  const SnrDist dist{FadingKind::rayleigh, set.samples.mean(), 1.0};
  return FadingFit{dist, cdf_mse(dist, set), false};
}

FadingFit fit_nakagami_mle(const SnrSampleSet& set) {
  check_sample_set(set);
  const double mean = set.samples.mean();
  const double mean_log = set.samples.log().mean();
  const double s = std::log(mean) - mean_log;  // >= 0 by Jensen, 0 iff all equal
  if (!(s > 0.0)) {
    throw degeneracy_error("fading fit: node " + set.node_id +
                           " samples have zero log-moment gap");
  }

  double m = greenwood_durand_initial_m(s);
  bool converged = false;
  for (int iter = 0; iter < 100; ++iter) {
    const double f = std::log(m) - digamma(m) - s;
    const double fprime = 1.0 / m - trigamma(m);  // < 0 for all m > 0
    double next = m - f / fprime;
    if (next <= 0.0) next = m / 2.0;
    const double step = std::abs(next - m);
    m = next;
    if (step < 1e-10 * std::max(1.0, m)) {
      converged = true;
      break;
    }
  }
  if (!converged) throw numeric_error("fading fit: Nakagami shape iteration did not converge");

  bool clamped = false;
  if (m < 0.5) {
    m = 0.5;
    clamped = true;
  }
  const SnrDist dist{FadingKind::nakagami, mean, m};
  return FadingFit{dist, cdf_mse(dist, set), clamped};
}

EmpiricalCdf::EmpiricalCdf(const Eigen::ArrayXd& samples)
    : sorted_(samples.data(), samples.data() + samples.size()) {
  if (sorted_.empty()) throw std::invalid_argument("EmpiricalCdf: need at least 1 sample");
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double cdf_mse(const SnrDist& model, const SnrSampleSet& set) {
  check_sample_set(set);
  return cdf_mse_against([&model](double x) { return snr_cdf(x, model); }, set.samples);
}

}  // namespace underlay
