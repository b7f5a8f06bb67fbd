// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The underlay authors
#pragma once

#include <Eigen/Core>
#include <span>

#include "underlay/fading.hpp"

namespace underlay {

// Sharing thresholds plus the PR-side noise power that maps interference dBm
// onto the SNR scale.
struct ConstraintConfig {
  double i_th_dbm;         // interference threshold at the PR
  double eps_i_out;        // max interference outage, in (0, 1)
  double c_th;             // capacity threshold, bits/sec/Hz, >= 0
  double eps_c_out;        // max capacity outage, in (0, 1)
  double noise_power_dbm;  // sigma^2 at the PR
};

void validate(const ConstraintConfig& config);

// F_I(i_th) = F_gamma(i_th_mw / sigma^2_mw): interference and SNR share the
// fading law up to the noise normalization.
double interference_cdf(double i_th_dbm, double noise_power_dbm, const SnrDist& dist);

// F_C(c_th) = F_gamma(2^c_th - 1) through C = log2(1 + gamma).
double capacity_cdf(double c_th, const SnrDist& dist);

// Interference constraint P(I >= I_th) <= eps. Ties pass.
bool check_ic(const SnrDist& dist, const ConstraintConfig& config);

// Capacity constraint P(C <= C_th) <= eps. Ties pass.
bool check_cc(const SnrDist& dist, const ConstraintConfig& config);

using BoolVector = Eigen::Array<bool, Eigen::Dynamic, 1>;
using BoolGrid = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

// Enable/disable decisions for one snapshot set; grid(p, i) is the CR
// transmit decision for PR p and ID i.
struct DecisionMatrix {
  BoolVector ic_bits;  // one per PR
  BoolVector cc_bits;  // one per ID
  BoolGrid grid;       // grid(p, i) == ic_bits[p] && cc_bits[i]
};

DecisionMatrix make_decision_matrix(const BoolVector& ic_bits, const BoolVector& cc_bits);

DecisionMatrix build_decision_matrix(std::span<const SnrDist> pr_dists,
                                     std::span<const SnrDist> id_dists,
                                     const ConstraintConfig& config);

struct ConstraintProbabilities {
  Eigen::ArrayXd f_i;  // interference CDF at i_th, one per PR
  Eigen::ArrayXd f_c;  // capacity CDF at c_th, one per ID
};

ConstraintProbabilities evaluate_constraint_probabilities(std::span<const SnrDist> pr_dists,
                                                          std::span<const SnrDist> id_dists,
                                                          const ConstraintConfig& config);

// Noise powers sigma^2 on the [lo, hi] grid (step_db spacing) whose IC bit
// pattern equals target_ic_bits. Used to calibrate a defensible default
// sigma^2 for a deployment.
Eigen::ArrayXd feasible_noise_window(std::span<const SnrDist> pr_dists, double i_th_dbm,
                                     double eps_i_out, const BoolVector& target_ic_bits,
                                     double lo_dbm, double hi_dbm, double step_db);

// PR-side noise calibrated for the reference deployment; decide/eval configs
// must still set sigma^2 explicitly.
inline constexpr double kReferencePrNoiseDbm = -119.5;

}  // namespace underlay
