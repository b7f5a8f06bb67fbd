// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The underlay authors
#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "underlay/config.hpp"
#include "underlay/constraints.hpp"
#include "underlay/estimation.hpp"

namespace underlay {

// Node placement for one deployment, CR plus PRs plus IDs in the plane.
// wavelength_m only records the snapshot decorrelation scale (moving a node
// ~10 wavelengths redraws small-scale fading); it enters no computation.
struct Geometry {
  Eigen::Vector2d cr_pos = Eigen::Vector2d::Zero();
  std::vector<Eigen::Vector2d> pr_positions;
  std::vector<Eigen::Vector2d> id_positions;
  double wavelength_m = 0.125;  // 2.4 GHz carrier
};

void validate(const Geometry& geometry);

struct CampaignConfig {
  Geometry geometry;
  // Mean large-scale model; path_loss.n is the exponent mean. Each link draws
  // its exponent as n + exponent_sigma * z, z standard normal.
  LogDistanceParams path_loss{40.0, 1.0, 3.5};
  double exponent_sigma = 0.0;  // >= 0; 0 disables shadowing
  FadingKind small_scale = FadingKind::nakagami;
  double nakagami_m = 1.0;  // shape when small_scale == nakagami, >= 0.5
  double tx_power_dbm = 10.0;
  // Receiver noise at the IDs. PR links normalize by the PR-side noise in
  // constraints.noise_power_dbm instead, matching the quantity their
  // interference threshold is compared against.
  double noise_power_dbm = -100.0;
  ConstraintConfig constraints{-90.0, 0.1, 7.5, 0.1, kReferencePrNoiseDbm};
  int samples_per_snapshot = 0;  // >= 2
  int oracle_samples = 100000;   // >= 1e4
  std::uint64_t seed = 0;
};

void validate(const CampaignConfig& config);

struct Snapshot {
  int pr_index = 0;  // zero-based
  int id_index = 0;
  double pr_exponent = 0.0;  // drawn path-loss exponents, one per link
  double id_exponent = 0.0;
  double pr_gamma_bar = 0.0;  // mean SNR implied by each link budget
  double id_gamma_bar = 0.0;
  SnrSampleSet pr_samples;
  SnrSampleSet id_samples;
};

// Link streams are keyed by (seed, role, node index) only, so every snapshot
// touching a node sees that node's channel unchanged: snapshot (p, i) and
// (p, j) share the PR side exactly, which is what makes one fit per node and
// the rank-one decision grid consistent.
Snapshot generate_snapshot(const CampaignConfig& config, int pr_index, int id_index);

enum class Tail { lower, upper };

struct McEstimate {
  double probability;
  double std_error;  // sqrt(p(1-p)/n)
};

// Empirical P(X <= threshold) (lower) or its exact complement (upper) from
// `count` draws of the law. count must be >= 1e4.
McEstimate monte_carlo_probability(const SnrDist& dist, double threshold, Tail tail,
                                   std::int64_t count, std::uint64_t seed);

struct NodeFitResult {
  std::string node_id;
  bool ok = false;
  std::string error;  // set when !ok
  FadingFit rayleigh{};
  FadingFit nakagami{};
};

struct OracleRow {
  int pr_index = 0;  // zero-based snapshot coordinates
  int id_index = 0;
  std::string constraint;  // "ic" | "cc"
  double analytical = 0.0;
  double estimate = 0.0;
  double std_error = 0.0;
};

struct CampaignResult {
  std::vector<NodeFitResult> pr_fits;
  std::vector<NodeFitResult> id_fits;
  // Probabilities and bits under the decision model; failed fits carry NaN
  // probabilities and false bits.
  ConstraintProbabilities probabilities;
  DecisionMatrix decisions;
  std::vector<OracleRow> oracle;
  FadingKind decision_model = FadingKind::nakagami;
};

// Full pipeline over the PR x ID grid: simulate links, fit both small-scale
// models per node, evaluate both constraints under decision_model, and check
// every closed form against a Monte Carlo re-estimate. Results are identical
// for any thread count.
CampaignResult run_campaign(const CampaignConfig& config,
                            FadingKind decision_model = FadingKind::nakagami, int threads = 1);

// fits.csv, probabilities.csv, decisions.csv, oracle.csv under out_dir.
void write_campaign_outputs(const CampaignResult& result, const std::filesystem::path& out_dir);

std::vector<std::string> pr_node_names(std::size_t count);
std::vector<std::string> id_node_names(std::size_t count);

// Reference indoor-office deployment: 4 outdoor PRs, 5 same-floor IDs, CR at
// the origin. Illustrative, not a measured site.
CampaignConfig paper_shape_preset();

CampaignConfig load_campaign_config(const KeyValueConfig& config);
ConstraintConfig load_constraint_config(const KeyValueConfig& config);

}  // namespace underlay
