// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The underlay authors
#include "underlay/constraints.hpp"

#include <cmath>
#include <stdexcept>

#include "underlay/units.hpp"

namespace underlay {

void validate(const ConstraintConfig& config) {
  if (!std::isfinite(config.i_th_dbm)) {
    throw std::invalid_argument("ConstraintConfig: i_th must be finite");
  }
  if (!(config.eps_i_out > 0.0 && config.eps_i_out < 1.0)) {
    throw std::invalid_argument("ConstraintConfig: eps_i_out must be in (0, 1)");
  }
  if (!(config.c_th >= 0.0) || !std::isfinite(config.c_th)) {
    throw std::invalid_argument("ConstraintConfig: c_th must be >= 0");
  }
  if (!(config.eps_c_out > 0.0 && config.eps_c_out < 1.0)) {
    throw std::invalid_argument("ConstraintConfig: eps_c_out must be in (0, 1)");
  }
  if (!std::isfinite(config.noise_power_dbm)) {
    throw std::invalid_argument("ConstraintConfig: noise_power must be finite");
  }
}

double interference_cdf(double i_th_dbm, double noise_power_dbm, const SnrDist& dist) {
  if (!std::isfinite(i_th_dbm) || !std::isfinite(noise_power_dbm)) {
    throw std::domain_error("interference_cdf: thresholds must be finite");
  }
  return snr_cdf(db_to_linear(i_th_dbm) / db_to_linear(noise_power_dbm), dist);
}

double capacity_cdf(double c_th, const SnrDist& dist) {
  if (!(c_th >= 0.0) || !std::isfinite(c_th)) {
    throw std::domain_error("capacity_cdf: c_th must be >= 0 and finite");
  }
  return snr_cdf(std::exp2(c_th) - 1.0, dist);
}

bool check_ic(const SnrDist& dist, const ConstraintConfig& config) {
  validate(config);
  const double outage = 1.0 - interference_cdf(config.i_th_dbm, config.noise_power_dbm, dist);
  return outage <= config.eps_i_out;
}

bool check_cc(const SnrDist& dist, const ConstraintConfig& config) {
  validate(config);
  return capacity_cdf(config.c_th, dist) <= config.eps_c_out;
}

DecisionMatrix make_decision_matrix(const BoolVector& ic_bits, const BoolVector& cc_bits) {
  if (ic_bits.size() == 0 || cc_bits.size() == 0) {
    throw std::invalid_argument("make_decision_matrix: need at least one PR and one ID bit");
  }
  BoolGrid grid(ic_bits.size(), cc_bits.size());
  for (Eigen::Index p = 0; p < ic_bits.size(); ++p) {
    for (Eigen::Index i = 0; i < cc_bits.size(); ++i) grid(p, i) = ic_bits[p] && cc_bits[i];
  }
  return DecisionMatrix{ic_bits, cc_bits, grid};
}

ConstraintProbabilities evaluate_constraint_probabilities(std::span<const SnrDist> pr_dists,
                                                          std::span<const SnrDist> id_dists,
                                                          const ConstraintConfig& config) {
  validate(config);
  if (pr_dists.empty() || id_dists.empty()) {
    throw std::invalid_argument("constraint evaluation: need at least one PR and one ID");
  }
  ConstraintProbabilities out;
  out.f_i.resize(static_cast<Eigen::Index>(pr_dists.size()));
  out.f_c.resize(static_cast<Eigen::Index>(id_dists.size()));
  for (std::size_t p = 0; p < pr_dists.size(); ++p) {
    out.f_i[static_cast<Eigen::Index>(p)] =
        interference_cdf(config.i_th_dbm, config.noise_power_dbm, pr_dists[p]);
  }
  for (std::size_t i = 0; i < id_dists.size(); ++i) {
    out.f_c[static_cast<Eigen::Index>(i)] = capacity_cdf(config.c_th, id_dists[i]);
  }
  return out;
}

DecisionMatrix build_decision_matrix(std::span<const SnrDist> pr_dists,
                                     std::span<const SnrDist> id_dists,
                                     const ConstraintConfig& config) {
  const ConstraintProbabilities probs =
      evaluate_constraint_probabilities(pr_dists, id_dists, config);
  BoolVector ic(probs.f_i.size());
  BoolVector cc(probs.f_c.size());
  for (Eigen::Index p = 0; p < ic.size(); ++p) ic[p] = (1.0 - probs.f_i[p]) <= config.eps_i_out;
  for (Eigen::Index i = 0; i < cc.size(); ++i) cc[i] = probs.f_c[i] <= config.eps_c_out;
  return make_decision_matrix(ic, cc);
}

Eigen::ArrayXd feasible_noise_window(std::span<const SnrDist> pr_dists, double i_th_dbm,
                                     double eps_i_out, const BoolVector& target_ic_bits,
                                     double lo_dbm, double hi_dbm, double step_db) {
  if (pr_dists.size() != static_cast<std::size_t>(target_ic_bits.size())) {
    throw std::invalid_argument("feasible_noise_window: target bit count must match PR count");
  }
  if (!(step_db > 0.0) || !(hi_dbm >= lo_dbm)) {
    throw std::invalid_argument("feasible_noise_window: bad sweep range");
  }
  std::vector<double> matches;
  for (int k = 0;; ++k) {
    const double noise = lo_dbm + step_db * k;
    if (noise > hi_dbm + step_db / 2.0) break;
    bool all_match = true;
    for (std::size_t p = 0; p < pr_dists.size(); ++p) {
      const double outage = 1.0 - interference_cdf(i_th_dbm, noise, pr_dists[p]);
      const bool bit = outage <= eps_i_out;
      if (bit != target_ic_bits[static_cast<Eigen::Index>(p)]) {
        all_match = false;
        break;
      }
    }
    if (all_match) matches.push_back(noise);
  }
  return Eigen::Map<const Eigen::ArrayXd>(matches.data(),
                                          static_cast<Eigen::Index>(matches.size()));
}

}  // namespace underlay
