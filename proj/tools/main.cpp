// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The underlay authors
//
// Command line front end. Exit codes: 0 success, 2 malformed input or usage,
// 3 estimation degeneracy or numeric non-convergence, 4 incomplete config.

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "underlay/config.hpp"
#include "underlay/constraints.hpp"
#include "underlay/csv.hpp"
#include "underlay/errors.hpp"
#include "underlay/estimation.hpp"
#include "underlay/scenario.hpp"
#include "underlay/units.hpp"

namespace {

using namespace underlay;

namespace fs = std::filesystem;

int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const config_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const degeneracy_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const numeric_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

FadingKind parse_model(const std::string& name) {
  return name == "rayleigh" ? FadingKind::rayleigh : FadingKind::nakagami;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open input file: " + path);
  return in;
}

std::ofstream open_output(const fs::path& dir, const std::string& name) {
  fs::create_directories(dir);
  const fs::path path = dir / name;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write output file: " + path.string());
  return out;
}

void print_decision_summary(const DecisionMatrix& matrix,
                            const std::vector<std::string>& pr_names,
                            const std::vector<std::string>& id_names) {
  std::cout << std::left << std::setw(8) << "id\\pr";
  for (const std::string& pr : pr_names) std::cout << std::setw(5) << pr;
  std::cout << '\n';
  for (Eigen::Index i = 0; i < matrix.grid.cols(); ++i) {
    std::cout << std::setw(8) << id_names[static_cast<std::size_t>(i)];
    for (Eigen::Index p = 0; p < matrix.grid.rows(); ++p) {
      std::cout << std::setw(5) << (matrix.grid(p, i) ? 1 : 0);
    }
    std::cout << '\n';
  }
  std::cout << "enabled " << matrix.grid.cast<int>().sum() << " of " << matrix.grid.size()
            << " pairs\n";
}

// ---------------------------------------------------------------------------
// fit-pathloss

int cmd_fit_pathloss(const std::string& input, const std::string& config_path,
                     const std::string& out_dir) {
  auto in = open_input(input);
  const std::vector<Measurement> measurements = read_measurements_csv(in, input);
  const KeyValueConfig config = KeyValueConfig::from_file(config_path);

  const double tx_power = config.require_double("tx_power");
  const double d0 = config.get_double("large_scale.d0", 1.0);
  const ItuRParams itu{config.get_double("itu_r.f_mhz", 2400.0),
                       config.get_double("itu_r.n", 3.0),
                       config.get_double("itu_r.l_floors", 0.0)};
  const WinnerParams winner{config.get_double("winner2.f_ghz", 2.4),
                            config.get_double("winner2.l_w", 5.0),
                            config.get_double("winner2.n_w", 2.1)};

  const PathLossFit fit = fit_log_distance_lse(measurements, tx_power, d0);
  const Eigen::ArrayXd exponents = invert_path_loss_exponents(measurements, tx_power, fit.params);

  // Noiseless measurements collapse the exponent spread; report the point
  // mass at the slope instead of failing the whole fit.
  NormalParams shadowing{fit.params.n, 0.0};
  double shadowing_mse = 0.0;
  try {
    shadowing = fit_normal_mle(exponents);
    shadowing_mse = cdf_mse_against(
        [&shadowing](double x) { return normal_cdf(x, shadowing); }, exponents);
  } catch (const degeneracy_error&) {
    if (exponents.size() > 0) shadowing.mu = exponents.mean();
  }

  {
    auto out = open_output(out_dir, "pathloss_fit.csv");
    out << "pl_d0_db,sigma_pl_db,n,mu_n,sigma_n,shadowing_mse\n";
    out << format_parameter(fit.params.pl_d0_db) << ',' << format_parameter(fit.sigma_pl_db)
        << ',' << format_parameter(fit.params.n) << ',' << format_parameter(shadowing.mu) << ','
        << format_parameter(shadowing.sigma) << ',' << format_probability(shadowing_mse) << '\n';
  }
  {
    auto out = open_output(out_dir, "pathloss_predictions.csv");
    out << "link_id,distance_m,measured_pl_db,log_distance_db,itu_r_db,winner2_db\n";
    for (const Measurement& m : measurements) {
      out << m.link_id << ',' << format_parameter(m.distance_m) << ','
          << format_parameter(tx_power - m.rx_power_dbm) << ','
          << format_parameter(log_distance_pl(fit.params, m.distance_m)) << ','
          << format_parameter(itu_r_pl(itu, m.distance_m)) << ','
          << format_parameter(winner2_pl(winner, m.distance_m)) << '\n';
    }
  }

  std::cout << "pl_d0_db = " << format_parameter(fit.params.pl_d0_db) << '\n'
            << "sigma_pl_db = " << format_parameter(fit.sigma_pl_db) << '\n'
            << "n = " << format_parameter(fit.params.n) << '\n'
            << "mu_n = " << format_parameter(shadowing.mu) << '\n'
            << "sigma_n = " << format_parameter(shadowing.sigma) << '\n'
            << "shadowing_mse = " << format_probability(shadowing_mse) << '\n'
            << "wrote " << (fs::path(out_dir) / "pathloss_fit.csv").string() << '\n'
            << "wrote " << (fs::path(out_dir) / "pathloss_predictions.csv").string() << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// fit-fading

int cmd_fit_fading(const std::string& input, const std::string& out_dir) {
  auto in = open_input(input);
  const std::vector<SnrSampleSet> sets = read_snr_samples_csv(in, input);

  std::vector<FadingFitRow> rows;
  std::vector<std::string> failures;
  for (const SnrSampleSet& set : sets) {
    try {
      const FadingFit rayleigh = fit_rayleigh_mle(set);
      const FadingFit nakagami = fit_nakagami_mle(set);
      rows.push_back(to_fit_row(set.node_id, rayleigh));
      rows.push_back(to_fit_row(set.node_id, nakagami));
      std::cout << set.node_id << ": rayleigh mse=" << format_probability(rayleigh.mse)
                << " gamma_bar=" << format_parameter(rayleigh.dist.gamma_bar)
                << " | nakagami mse=" << format_probability(nakagami.mse)
                << " m=" << format_parameter(nakagami.dist.m)
                << " gamma_bar=" << format_parameter(nakagami.dist.gamma_bar)
                << (nakagami.m_clamped ? " (m clamped)" : "") << '\n';
    } catch (const std::exception& e) {
      failures.push_back(e.what());
    }
  }

  auto out = open_output(out_dir, "fits.csv");
  write_fits_csv(out, rows);
  std::cout << "wrote " << (fs::path(out_dir) / "fits.csv").string() << '\n';

  for (const std::string& failure : failures) std::cerr << "error: " << failure << '\n';
  return failures.empty() ? 0 : 3;
}

// ---------------------------------------------------------------------------
// decide

struct NamedDists {
  std::vector<std::string> pr_names, id_names;
  std::vector<SnrDist> pr_dists, id_dists;
};

NamedDists select_fits(const std::vector<FadingFitRow>& rows, FadingKind model,
                       const std::string& source) {
  const std::string wanted = model == FadingKind::rayleigh ? "rayleigh" : "nakagami";
  NamedDists out;
  for (const FadingFitRow& row : rows) {
    if (row.model != wanted) continue;
    SnrDist dist{model, row.gamma_bar, row.m.value_or(1.0)};
    const bool is_pr = row.node_id.rfind("PR", 0) == 0;
    const bool is_id = row.node_id.rfind("ID", 0) == 0;
    if (!is_pr && !is_id) {
      throw parse_error(source + ": node_id '" + row.node_id +
                        "' must start with PR or ID to assign a role");
    }
    auto& names = is_pr ? out.pr_names : out.id_names;
    auto& dists = is_pr ? out.pr_dists : out.id_dists;
    for (const std::string& seen : names) {
      if (seen == row.node_id) {
        throw parse_error(source + ": duplicate " + wanted + " fit for node " + row.node_id);
      }
    }
    names.push_back(row.node_id);
    dists.push_back(dist);
  }
  if (out.pr_dists.empty() || out.id_dists.empty()) {
    throw parse_error(source + ": need " + wanted + " fits for at least one PR and one ID node");
  }
  return out;
}

int cmd_decide(const std::string& input, const std::string& config_path,
               const std::string& model_name, const std::string& out_dir) {
  auto in = open_input(input);
  const std::vector<FadingFitRow> rows = read_fits_csv(in, input);
  const NamedDists fits = select_fits(rows, parse_model(model_name), input);
  const ConstraintConfig constraints =
      load_constraint_config(KeyValueConfig::from_file(config_path));

  const ConstraintProbabilities probabilities =
      evaluate_constraint_probabilities(fits.pr_dists, fits.id_dists, constraints);
  const DecisionMatrix matrix = build_decision_matrix(fits.pr_dists, fits.id_dists, constraints);

  {
    auto out = open_output(out_dir, "decisions.csv");
    write_decisions_csv(out, matrix, fits.pr_names, fits.id_names);
  }
  {
    auto out = open_output(out_dir, "probabilities.csv");
    write_probabilities_csv(out, probabilities, matrix, fits.pr_names, fits.id_names);
  }

  print_decision_summary(matrix, fits.pr_names, fits.id_names);
  std::cout << "wrote " << (fs::path(out_dir) / "decisions.csv").string() << '\n'
            << "wrote " << (fs::path(out_dir) / "probabilities.csv").string() << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// eval

int cmd_eval(const std::string& config_path, const std::string& model_name, double gamma_bar,
             double m) {
  const ConstraintConfig constraints =
      load_constraint_config(KeyValueConfig::from_file(config_path));
  const FadingKind kind = parse_model(model_name);
  const SnrDist dist{kind, gamma_bar, kind == FadingKind::nakagami ? m : 1.0};
  validate(dist);

  const double f_i = interference_cdf(constraints.i_th_dbm, constraints.noise_power_dbm, dist);
  const double f_c = capacity_cdf(constraints.c_th, dist);
  const bool ic = (1.0 - f_i) <= constraints.eps_i_out;
  const bool cc = f_c <= constraints.eps_c_out;

  std::cout << "model = " << model_name << '\n'
            << "gamma_bar = " << format_parameter(gamma_bar) << '\n';
  if (kind == FadingKind::nakagami) std::cout << "m = " << format_parameter(m) << '\n';
  std::cout << "f_i = " << format_probability(f_i) << '\n'
            << "interference_outage = " << format_probability(1.0 - f_i) << '\n'
            << "ic_bit = " << (ic ? 1 : 0) << '\n'
            << "f_c = " << format_probability(f_c) << '\n'
            << "capacity_outage = " << format_probability(f_c) << '\n'
            << "cc_bit = " << (cc ? 1 : 0) << '\n'
            << "enable = " << ((ic && cc) ? 1 : 0) << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// export-cdf

int cmd_export_cdf(const std::string& model_name, double gamma_bar, double m, double min_x,
                   double max_x, int steps, const std::string& samples_path,
                   const std::string& node_id, const std::string& out_dir) {
  const FadingKind kind = parse_model(model_name);
  const SnrDist dist{kind, gamma_bar, kind == FadingKind::nakagami ? m : 1.0};
  validate(dist);
  if (!(min_x < max_x)) throw parse_error("export-cdf: --min must be strictly below --max");
  if (steps < 1) throw parse_error("export-cdf: --steps must be >= 1");

  std::optional<EmpiricalCdf> empirical;
  if (!samples_path.empty()) {
    auto in = open_input(samples_path);
    const std::vector<SnrSampleSet> sets = read_snr_samples_csv(in, samples_path);
    if (node_id.empty()) {
      if (sets.size() != 1) {
        throw parse_error(samples_path + ": multiple nodes present, pick one with --node");
      }
      empirical.emplace(sets[0].samples);
    } else {
      const auto it = std::find_if(sets.begin(), sets.end(),
                                   [&](const SnrSampleSet& s) { return s.node_id == node_id; });
      if (it == sets.end()) {
        throw parse_error(samples_path + ": node '" + node_id + "' not found");
      }
      empirical.emplace(it->samples);
    }
  }

  auto out = open_output(out_dir, "cdf.csv");
  out << (empirical ? "x,analytical,empirical\n" : "x,analytical\n");
  for (int k = 0; k <= steps; ++k) {
    const double x = min_x + (max_x - min_x) * static_cast<double>(k) / steps;
    out << format_parameter(x) << ',' << format_probability(snr_cdf(x, dist));
    if (empirical) out << ',' << format_probability((*empirical)(x));
    out << '\n';
  }
  std::cout << "wrote " << (fs::path(out_dir) / "cdf.csv").string() << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// simulate

int cmd_simulate(const std::string& config_path, const std::string& preset,
                 std::optional<std::uint64_t> seed, const std::string& model_name, int threads,
                 const std::string& out_dir) {
  if (config_path.empty() == preset.empty()) {
    throw parse_error("simulate: pass exactly one of --config or --preset");
  }
  CampaignConfig config;
  if (!preset.empty()) {
    if (preset != "paper-shape") {
      throw parse_error("simulate: unknown preset '" + preset + "' (available: paper-shape)");
    }
    config = paper_shape_preset();
  } else {
    config = load_campaign_config(KeyValueConfig::from_file(config_path));
  }
  if (seed) config.seed = *seed;

  const CampaignResult result = run_campaign(config, parse_model(model_name), threads);
  write_campaign_outputs(result, out_dir);

  bool any_failed = false;
  for (const NodeFitResult& fit : result.pr_fits) {
    if (!fit.ok) {
      std::cerr << "warning: " << fit.node_id << " fit failed: " << fit.error << '\n';
      any_failed = true;
    }
  }
  for (const NodeFitResult& fit : result.id_fits) {
    if (!fit.ok) {
      std::cerr << "warning: " << fit.node_id << " fit failed: " << fit.error << '\n';
      any_failed = true;
    }
  }
  if (any_failed) std::cerr << "warning: failed nodes carry disabled bits in the grid\n";

  print_decision_summary(result.decisions,
                         pr_node_names(result.pr_fits.size()),
                         id_node_names(result.id_fits.size()));
  double max_abs_error = 0.0;
  for (const OracleRow& row : result.oracle) {
    if (std::isfinite(row.analytical)) {
      max_abs_error = std::max(max_abs_error, std::abs(row.analytical - row.estimate));
    }
  }
  std::cout << "oracle max |analytical - monte_carlo| = " << format_probability(max_abs_error)
            << '\n';
  for (const char* name : {"fits.csv", "probabilities.csv", "decisions.csv", "oracle.csv"}) {
    std::cout << "wrote " << (fs::path(out_dir) / name).string() << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Underlay spectrum-sharing decision pipeline"};
  app.require_subcommand(1);
  const auto model_check = CLI::IsMember({"rayleigh", "nakagami"});

  // fit-pathloss
  auto* fit_pathloss = app.add_subcommand(
      "fit-pathloss", "Fit the log-distance model and shadowing exponent law to measurements");
  std::string fp_input, fp_config, fp_out = ".";
  fit_pathloss->add_option("measurements", fp_input, "CSV: link_id,distance_m,rx_power_dbm")
      ->required();
  fit_pathloss->add_option("--config", fp_config, "config with tx_power and model frequencies")
      ->required();
  fit_pathloss->add_option("--out-dir", fp_out, "output directory");

  // fit-fading
  auto* fit_fading = app.add_subcommand(
      "fit-fading", "Fit Rayleigh and Nakagami SNR laws per node from sample CSV");
  std::string ff_input, ff_out = ".";
  fit_fading->add_option("samples", ff_input, "CSV: snapshot_id,node_id,snr_linear")->required();
  fit_fading->add_option("--out-dir", ff_out, "output directory");

  // decide
  auto* decide = app.add_subcommand(
      "decide", "Evaluate both constraints on fitted laws and emit the decision grid");
  std::string dc_input, dc_config, dc_model = "nakagami", dc_out = ".";
  decide->add_option("fits", dc_input, "fits.csv from fit-fading or simulate")->required();
  decide->add_option("--config", dc_config, "config with constraints.*")->required();
  decide->add_option("--model", dc_model, "decision model")->check(model_check);
  decide->add_option("--out-dir", dc_out, "output directory");

  // eval
  auto* eval = app.add_subcommand(
      "eval", "Evaluate both constraints for one explicit SNR distribution");
  std::string ev_config, ev_model = "nakagami";
  double ev_gamma_bar = 0.0, ev_m = 1.0;
  eval->add_option("--config", ev_config, "config with constraints.*")->required();
  eval->add_option("--model", ev_model, "SNR model")->check(model_check);
  eval->add_option("--gamma-bar", ev_gamma_bar, "mean SNR, linear")->required();
  eval->add_option("--m", ev_m, "Nakagami shape");

  // export-cdf
  auto* export_cdf = app.add_subcommand(
      "export-cdf", "Tabulate an analytical SNR CDF, optionally next to an empirical one");
  std::string xc_model = "nakagami", xc_samples, xc_node, xc_out = ".";
  double xc_gamma_bar = 0.0, xc_m = 1.0, xc_min = 0.0, xc_max = 0.0;
  int xc_steps = 100;
  export_cdf->add_option("--model", xc_model, "SNR model")->check(model_check);
  export_cdf->add_option("--gamma-bar", xc_gamma_bar, "mean SNR, linear")->required();
  export_cdf->add_option("--m", xc_m, "Nakagami shape");
  export_cdf->add_option("--min", xc_min, "grid start (linear SNR)");
  export_cdf->add_option("--max", xc_max, "grid end (linear SNR)")->required();
  export_cdf->add_option("--steps", xc_steps, "grid steps (writes steps+1 rows)");
  export_cdf->add_option("--samples", xc_samples, "optional sample CSV for the empirical column");
  export_cdf->add_option("--node", xc_node, "node_id within --samples");
  export_cdf->add_option("--out-dir", xc_out, "output directory");

  // simulate
  auto* simulate = app.add_subcommand(
      "simulate", "Run a measurement campaign over the PR x ID grid and decide per snapshot");
  std::string sm_config, sm_preset, sm_model = "nakagami", sm_out = "campaign_output";
  std::uint64_t sm_seed = 0;
  int sm_threads = 1;
  simulate->add_option("--config", sm_config, "campaign config file");
  simulate->add_option("--preset", sm_preset, "built-in deployment (paper-shape)");
  auto* seed_opt = simulate->add_option("--seed", sm_seed, "override the config seed");
  simulate->add_option("--model", sm_model, "decision model")->check(model_check);
  simulate->add_option("--threads", sm_threads, "worker threads")->check(CLI::PositiveNumber);
  simulate->add_option("--out-dir", sm_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (fit_pathloss->parsed()) {
    return run_guarded([&] { return cmd_fit_pathloss(fp_input, fp_config, fp_out); });
  }
  if (fit_fading->parsed()) {
    return run_guarded([&] { return cmd_fit_fading(ff_input, ff_out); });
  }
  if (decide->parsed()) {
    return run_guarded([&] { return cmd_decide(dc_input, dc_config, dc_model, dc_out); });
  }
  if (eval->parsed()) {
    return run_guarded([&] { return cmd_eval(ev_config, ev_model, ev_gamma_bar, ev_m); });
  }
  if (export_cdf->parsed()) {
    return run_guarded([&] {
      return cmd_export_cdf(xc_model, xc_gamma_bar, xc_m, xc_min, xc_max, xc_steps, xc_samples,
                            xc_node, xc_out);
    });
  }
  if (simulate->parsed()) {
    return run_guarded([&] {
      std::optional<std::uint64_t> seed;
      if (seed_opt->count() > 0) seed = sm_seed;
      return cmd_simulate(sm_config, sm_preset, seed, sm_model, sm_threads, sm_out);
    });
  }
  return 2;
}
