// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The underlay authors
#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "underlay/constraints.hpp"
#include "underlay/estimation.hpp"

namespace underlay {

// Probabilities print with 6 significant digits; model parameters with 9.
// Fixed formatting keeps repeated runs byte-identical and diffs readable.
std::string format_probability(double value);
std::string format_parameter(double value);

// Header "link_id,distance_m,rx_power_dbm". Errors carry source:line.
std::vector<Measurement> read_measurements_csv(std::istream& in, std::string_view source_name);

// Header "snapshot_id,node_id,snr_linear". Rows group by node_id in first-
// appearance order; snapshot_id is provenance only.
std::vector<SnrSampleSet> read_snr_samples_csv(std::istream& in, std::string_view source_name);

// One fits.csv row; m is empty for Rayleigh rows.
struct FadingFitRow {
  std::string node_id;
  std::string model;  // "rayleigh" | "nakagami"
  double mse;
  double gamma_bar;
  std::optional<double> m;
  bool m_clamped = false;
};

FadingFitRow to_fit_row(const std::string& node_id, const FadingFit& fit);

// Header "node_id,model,mse,gamma_bar,m,m_clamped".
std::vector<FadingFitRow> read_fits_csv(std::istream& in, std::string_view source_name);
void write_fits_csv(std::ostream& out, std::span<const FadingFitRow> rows);

// Header "id\pr,<pr names...>"; one row per ID, cells are 0/1.
void write_decisions_csv(std::ostream& out, const DecisionMatrix& matrix,
                         std::span<const std::string> pr_names,
                         std::span<const std::string> id_names);

// Header "node_id,constraint,cdf_at_threshold,outage,bit". The outage column
// is the quantity compared against eps: 1 - F_I for ic rows, F_C for cc rows.
void write_probabilities_csv(std::ostream& out, const ConstraintProbabilities& probabilities,
                             const DecisionMatrix& matrix,
                             std::span<const std::string> pr_names,
                             std::span<const std::string> id_names);

}  // namespace underlay
