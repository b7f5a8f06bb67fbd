// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The underlay authors
#include "underlay/scenario.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "underlay/csv.hpp"
#include "underlay/errors.hpp"
#include "underlay/rng.hpp"
#include "underlay/units.hpp"

namespace underlay {

namespace {

// Stream labels; node index is appended so each node owns one stream per use.
constexpr std::uint64_t kPrLinkRole = 1;
constexpr std::uint64_t kIdLinkRole = 2;
constexpr std::uint64_t kOracleIcRole = 3;
constexpr std::uint64_t kOracleCcRole = 4;

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

struct LinkRealization {
  double exponent = 0.0;
  double gamma_bar = 0.0;
  SnrSampleSet samples;
};

SnrDist small_scale_law(const CampaignConfig& config, double gamma_bar) {
  if (config.small_scale == FadingKind::rayleigh) {
    return SnrDist{FadingKind::rayleigh, gamma_bar, 1.0};
  }
  return SnrDist{FadingKind::nakagami, gamma_bar, config.nakagami_m};
}

LinkRealization simulate_link(const CampaignConfig& config, bool pr_side, int index) {
  const Eigen::Vector2d& pos = pr_side
                                   ? config.geometry.pr_positions[static_cast<std::size_t>(index)]
                                   : config.geometry.id_positions[static_cast<std::size_t>(index)];
  const double distance = (pos - config.geometry.cr_pos).norm();
  RandomStream rng(derive_stream_seed(
      config.seed, {pr_side ? kPrLinkRole : kIdLinkRole, static_cast<std::uint64_t>(index)}));

  LinkRealization link;
  // The exponent draw happens even at sigma = 0 so stream positions do not
  // depend on the shadowing setting.
  link.exponent = config.path_loss.n + config.exponent_sigma * rng.normal();
  LogDistanceParams link_model = config.path_loss;
  link_model.n = link.exponent;
  const double pl_db = log_distance_pl(link_model, distance);
  const double noise_dbm =
      pr_side ? config.constraints.noise_power_dbm : config.noise_power_dbm;
  link.gamma_bar = mean_snr_from_budget(config.tx_power_dbm, pl_db, noise_dbm);

  link.samples.node_id = (pr_side ? "PR" : "ID") + std::to_string(index + 1);
  link.samples.samples.resize(config.samples_per_snapshot);
  sample_snr(small_scale_law(config, link.gamma_bar), rng, link.samples.samples);
  return link;
}

NodeFitResult fit_node(const SnrSampleSet& set) {
  NodeFitResult result;
  result.node_id = set.node_id;
  try {
    result.rayleigh = fit_rayleigh_mle(set);
    result.nakagami = fit_nakagami_mle(set);
    result.ok = true;
  } catch (const std::exception& e) {
    result.ok = false;
    result.error = e.what();
  }
  return result;
}

// Index-sharded parallel loop. Each index writes only its own output slot,
// so results cannot depend on the schedule.
void parallel_for(int total, int threads, const std::function<void(int)>& body) {
  threads = std::max(1, std::min(threads, total));
  if (threads <= 1) {
    for (int i = 0; i < total; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      while (true) {
        const int i = next.fetch_add(1);
        if (i >= total) return;
        try {
          body(i);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (std::thread& worker : pool) worker.join();
  if (first_error) std::rethrow_exception(first_error);
}

void require_stream(const std::ofstream& out, const std::filesystem::path& path) {
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace

void validate(const Geometry& geometry) {
  if (geometry.pr_positions.empty() || geometry.id_positions.empty()) {
    throw std::invalid_argument("Geometry: need at least one PR and one ID");
  }
  if (!(geometry.wavelength_m > 0.0)) {
    throw std::invalid_argument("Geometry: wavelength must be > 0");
  }
  const auto check = [&](const Eigen::Vector2d& pos, const char* role) {
    if ((pos - geometry.cr_pos).norm() <= 0.0) {
      throw std::invalid_argument(std::string("Geometry: ") + role +
                                  " node coincides with the CR");
    }
  };
  for (const Eigen::Vector2d& pos : geometry.pr_positions) check(pos, "PR");
  for (const Eigen::Vector2d& pos : geometry.id_positions) check(pos, "ID");
}

void validate(const CampaignConfig& config) {
  validate(config.geometry);
  if (!(config.path_loss.d0_m > 0.0)) {
    throw std::invalid_argument("CampaignConfig: large-scale d0 must be > 0");
  }
  if (!std::isfinite(config.path_loss.pl_d0_db) || !std::isfinite(config.path_loss.n)) {
    throw std::invalid_argument("CampaignConfig: large-scale parameters must be finite");
  }
  if (!(config.exponent_sigma >= 0.0)) {
    throw std::invalid_argument("CampaignConfig: sigma_n must be >= 0");
  }
  if (config.small_scale == FadingKind::nakagami && !(config.nakagami_m >= 0.5)) {
    throw std::invalid_argument("CampaignConfig: small-scale m must be >= 0.5");
  }
  if (!std::isfinite(config.tx_power_dbm) || !std::isfinite(config.noise_power_dbm)) {
    throw std::invalid_argument("CampaignConfig: power levels must be finite");
  }
  validate(config.constraints);
  if (config.samples_per_snapshot < 2) {
    throw std::invalid_argument("CampaignConfig: samples_per_snapshot must be >= 2");
  }
  if (config.oracle_samples < 10000) {
    throw std::invalid_argument("CampaignConfig: oracle_samples must be >= 10000");
  }
}

Snapshot generate_snapshot(const CampaignConfig& config, int pr_index, int id_index) {
  validate(config);
  if (pr_index < 0 || static_cast<std::size_t>(pr_index) >= config.geometry.pr_positions.size()) {
    throw std::invalid_argument("generate_snapshot: pr_index out of range");
  }
  if (id_index < 0 || static_cast<std::size_t>(id_index) >= config.geometry.id_positions.size()) {
    throw std::invalid_argument("generate_snapshot: id_index out of range");
  }
  LinkRealization pr = simulate_link(config, true, pr_index);
  LinkRealization id = simulate_link(config, false, id_index);
  Snapshot snap;
  snap.pr_index = pr_index;
  snap.id_index = id_index;
  snap.pr_exponent = pr.exponent;
  snap.id_exponent = id.exponent;
  snap.pr_gamma_bar = pr.gamma_bar;
  snap.id_gamma_bar = id.gamma_bar;
  snap.pr_samples = std::move(pr.samples);
  snap.id_samples = std::move(id.samples);
  return snap;
}

McEstimate monte_carlo_probability(const SnrDist& dist, double threshold, Tail tail,
                                   std::int64_t count, std::uint64_t seed) {
  validate(dist);
  if (count < 10000) {
    throw std::invalid_argument("monte_carlo_probability: count must be >= 10000");
  }
  RandomStream rng(seed);
  std::int64_t below = 0;
  if (dist.kind == FadingKind::rayleigh) {
    for (std::int64_t i = 0; i < count; ++i) below += rng.exponential(dist.gamma_bar) <= threshold;
  } else {
    const double scale = dist.gamma_bar / dist.m;
    for (std::int64_t i = 0; i < count; ++i) below += rng.gamma(dist.m, scale) <= threshold;
  }
  const double lower = static_cast<double>(below) / static_cast<double>(count);
  const double p = tail == Tail::lower ? lower : 1.0 - lower;
  return McEstimate{p, std::sqrt(p * (1.0 - p) / static_cast<double>(count))};
}

std::vector<std::string> pr_node_names(std::size_t count) {
  std::vector<std::string> names;
  names.reserve(count);
  for (std::size_t i = 0; i < count; ++i) names.push_back("PR" + std::to_string(i + 1));
  return names;
}

std::vector<std::string> id_node_names(std::size_t count) {
  std::vector<std::string> names;
  names.reserve(count);
  for (std::size_t i = 0; i < count; ++i) names.push_back("ID" + std::to_string(i + 1));
  return names;
}

CampaignResult run_campaign(const CampaignConfig& config, FadingKind decision_model,
                            int threads) {
  validate(config);
  if (threads < 1) throw std::invalid_argument("run_campaign: threads must be >= 1");
  const int npr = static_cast<int>(config.geometry.pr_positions.size());
  const int nid = static_cast<int>(config.geometry.id_positions.size());

  CampaignResult result;
  result.decision_model = decision_model;
  result.pr_fits.resize(static_cast<std::size_t>(npr));
  result.id_fits.resize(static_cast<std::size_t>(nid));

  parallel_for(npr + nid, threads, [&](int task) {
    if (task < npr) {
      result.pr_fits[static_cast<std::size_t>(task)] =
          fit_node(simulate_link(config, true, task).samples);
    } else {
      const int i = task - npr;
      result.id_fits[static_cast<std::size_t>(i)] =
          fit_node(simulate_link(config, false, i).samples);
    }
  });

  const auto decision_dist = [&](const NodeFitResult& fit) {
    return decision_model == FadingKind::nakagami ? fit.nakagami.dist : fit.rayleigh.dist;
  };

  result.probabilities.f_i.resize(npr);
  result.probabilities.f_c.resize(nid);
  BoolVector ic(npr);
  BoolVector cc(nid);
  for (int p = 0; p < npr; ++p) {
    const NodeFitResult& fit = result.pr_fits[static_cast<std::size_t>(p)];
    if (fit.ok) {
      const double f_i = interference_cdf(config.constraints.i_th_dbm,
                                          config.constraints.noise_power_dbm, decision_dist(fit));
      result.probabilities.f_i[p] = f_i;
      ic[p] = (1.0 - f_i) <= config.constraints.eps_i_out;
    } else {
      result.probabilities.f_i[p] = kNan;
      ic[p] = false;
    }
  }
  for (int i = 0; i < nid; ++i) {
    const NodeFitResult& fit = result.id_fits[static_cast<std::size_t>(i)];
    if (fit.ok) {
      const double f_c = capacity_cdf(config.constraints.c_th, decision_dist(fit));
      result.probabilities.f_c[i] = f_c;
      cc[i] = f_c <= config.constraints.eps_c_out;
    } else {
      result.probabilities.f_c[i] = kNan;
      cc[i] = false;
    }
  }
  result.decisions = make_decision_matrix(ic, cc);

  // One oracle pair per snapshot: every closed-form probability used above is
  // re-estimated by simulation under the same fitted law.
  const double interference_ratio = db_to_linear(config.constraints.i_th_dbm) /
                                    db_to_linear(config.constraints.noise_power_dbm);
  const double capacity_ratio = std::exp2(config.constraints.c_th) - 1.0;
  result.oracle.resize(static_cast<std::size_t>(2 * npr * nid));
  parallel_for(npr * nid, threads, [&](int k) {
    const int p = k / nid;
    const int i = k % nid;
    OracleRow& ic_row = result.oracle[static_cast<std::size_t>(2 * k)];
    OracleRow& cc_row = result.oracle[static_cast<std::size_t>(2 * k + 1)];
    ic_row = OracleRow{p, i, "ic", kNan, kNan, kNan};
    cc_row = OracleRow{p, i, "cc", kNan, kNan, kNan};
    const NodeFitResult& pr_fit = result.pr_fits[static_cast<std::size_t>(p)];
    const NodeFitResult& id_fit = result.id_fits[static_cast<std::size_t>(i)];
    if (pr_fit.ok) {
      const SnrDist dist = decision_dist(pr_fit);
      ic_row.analytical = interference_cdf(config.constraints.i_th_dbm,
                                           config.constraints.noise_power_dbm, dist);
      const McEstimate mc = monte_carlo_probability(
          dist, interference_ratio, Tail::lower, config.oracle_samples,
          derive_stream_seed(config.seed, {kOracleIcRole, static_cast<std::uint64_t>(p),
                                           static_cast<std::uint64_t>(i)}));
      ic_row.estimate = mc.probability;
      ic_row.std_error = mc.std_error;
    }
    if (id_fit.ok) {
      const SnrDist dist = decision_dist(id_fit);
      cc_row.analytical = capacity_cdf(config.constraints.c_th, dist);
      const McEstimate mc = monte_carlo_probability(
          dist, capacity_ratio, Tail::lower, config.oracle_samples,
          derive_stream_seed(config.seed, {kOracleCcRole, static_cast<std::uint64_t>(p),
                                           static_cast<std::uint64_t>(i)}));
      cc_row.estimate = mc.probability;
      cc_row.std_error = mc.std_error;
    }
  });
  return result;
}

void write_campaign_outputs(const CampaignResult& result, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  const std::vector<std::string> pr_names = pr_node_names(result.pr_fits.size());
  const std::vector<std::string> id_names = id_node_names(result.id_fits.size());

  {
    std::vector<FadingFitRow> rows;
    for (const NodeFitResult& fit : result.pr_fits) {
      if (!fit.ok) continue;
      rows.push_back(to_fit_row(fit.node_id, fit.rayleigh));
      rows.push_back(to_fit_row(fit.node_id, fit.nakagami));
    }
    for (const NodeFitResult& fit : result.id_fits) {
      if (!fit.ok) continue;
      rows.push_back(to_fit_row(fit.node_id, fit.rayleigh));
      rows.push_back(to_fit_row(fit.node_id, fit.nakagami));
    }
    const std::filesystem::path path = out_dir / "fits.csv";
    std::ofstream out(path);
    require_stream(out, path);
    write_fits_csv(out, rows);
  }
  {
    const std::filesystem::path path = out_dir / "probabilities.csv";
    std::ofstream out(path);
    require_stream(out, path);
    write_probabilities_csv(out, result.probabilities, result.decisions, pr_names, id_names);
  }
  {
    const std::filesystem::path path = out_dir / "decisions.csv";
    std::ofstream out(path);
    require_stream(out, path);
    write_decisions_csv(out, result.decisions, pr_names, id_names);
  }
  {
    const std::filesystem::path path = out_dir / "oracle.csv";
    std::ofstream out(path);
    require_stream(out, path);
    out << "pr,id,constraint,analytical,monte_carlo,std_error,abs_error\n";
    for (const OracleRow& row : result.oracle) {
      out << pr_names[static_cast<std::size_t>(row.pr_index)] << ','
          << id_names[static_cast<std::size_t>(row.id_index)] << ',' << row.constraint << ','
          << format_probability(row.analytical) << ',' << format_probability(row.estimate) << ','
          << format_probability(row.std_error) << ','
          << format_probability(std::abs(row.analytical - row.estimate)) << '\n';
    }
  }
}

CampaignConfig paper_shape_preset() {
  CampaignConfig config;
  config.geometry.cr_pos = Eigen::Vector2d(0.0, 0.0);
  config.geometry.pr_positions = {Eigen::Vector2d(55.0, 10.0), Eigen::Vector2d(20.0, -8.0),
                                  Eigen::Vector2d(48.0, -25.0), Eigen::Vector2d(60.0, 35.0)};
  config.geometry.id_positions = {Eigen::Vector2d(2.0, 1.0), Eigen::Vector2d(4.0, 3.0),
                                  Eigen::Vector2d(8.0, 4.0), Eigen::Vector2d(11.0, -6.0),
                                  Eigen::Vector2d(14.0, 8.0)};
  config.path_loss = LogDistanceParams{44.19, 1.0, 3.58};
  config.exponent_sigma = 0.25;
  config.small_scale = FadingKind::nakagami;
  config.nakagami_m = 1.2;
  config.tx_power_dbm = 10.0;
  config.noise_power_dbm = -100.0;
  config.constraints = ConstraintConfig{-90.0, 0.1, 7.5, 0.1, kReferencePrNoiseDbm};
  config.samples_per_snapshot = 512;
  config.oracle_samples = 100000;
  config.seed = 1;
  return config;
}

ConstraintConfig load_constraint_config(const KeyValueConfig& config) {
  ConstraintConfig out;
  out.i_th_dbm = config.require_double("constraints.i_th");
  out.eps_i_out = config.require_double("constraints.eps_i_out");
  out.c_th = config.require_double("constraints.c_th");
  out.eps_c_out = config.require_double("constraints.eps_c_out");
  out.noise_power_dbm = config.require_double("constraints.noise_power");
  validate(out);
  return out;
}

CampaignConfig load_campaign_config(const KeyValueConfig& config) {
  CampaignConfig out;
  if (config.has("geometry.cr")) out.geometry.cr_pos = config.require_pair("geometry.cr");
  out.geometry.wavelength_m = config.get_double("geometry.wavelength", 0.125);
  out.geometry.pr_positions.clear();
  out.geometry.id_positions.clear();
  for (int k = 1; config.has("geometry.pr." + std::to_string(k)); ++k) {
    out.geometry.pr_positions.push_back(config.require_pair("geometry.pr." + std::to_string(k)));
  }
  for (int k = 1; config.has("geometry.id." + std::to_string(k)); ++k) {
    out.geometry.id_positions.push_back(config.require_pair("geometry.id." + std::to_string(k)));
  }
  if (out.geometry.pr_positions.empty()) {
    throw config_error(config.source_name() + ": missing required key 'geometry.pr.1'");
  }
  if (out.geometry.id_positions.empty()) {
    throw config_error(config.source_name() + ": missing required key 'geometry.id.1'");
  }

  out.path_loss.pl_d0_db = config.require_double("large_scale.pl_d0");
  out.path_loss.d0_m = config.get_double("large_scale.d0", 1.0);
  out.path_loss.n = config.require_double("large_scale.mu_n");
  out.exponent_sigma = config.get_double("large_scale.sigma_n", 0.0);

  const std::string model = config.get_string("small_scale.model", "nakagami");
  if (model == "rayleigh") {
    out.small_scale = FadingKind::rayleigh;
  } else if (model == "nakagami") {
    out.small_scale = FadingKind::nakagami;
  } else {
    throw parse_error(config.source_name() +
                      ": small_scale.model must be 'rayleigh' or 'nakagami'");
  }
  out.nakagami_m = config.get_double("small_scale.m", 1.0);

  out.tx_power_dbm = config.require_double("tx_power");
  out.noise_power_dbm = config.require_double("noise_power");
  out.constraints = load_constraint_config(config);
  out.samples_per_snapshot = static_cast<int>(config.require_int("samples_per_snapshot"));
  out.oracle_samples = static_cast<int>(config.get_int("oracle_samples", 100000));
  out.seed = config.get_uint64("seed", 0);
  validate(out);
  return out;
}

}  // namespace underlay
