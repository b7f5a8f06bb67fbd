// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The underlay authors
#include "underlay/pathloss.hpp"

#include <cmath>
#include <stdexcept>

#include "underlay/units.hpp"

namespace underlay {

double log_distance_pl(const LogDistanceParams& params, double distance_m) {
  if (!(params.d0_m > 0.0)) throw std::domain_error("log_distance_pl: d0 must be > 0");
  if (!(distance_m > 0.0)) throw std::domain_error("log_distance_pl: distance must be > 0");
  return params.pl_d0_db + 10.0 * params.n * std::log10(distance_m / params.d0_m);
}

double itu_r_pl(const ItuRParams& params, double distance_m) {
  if (!(params.f_mhz > 0.0)) throw std::domain_error("itu_r_pl: frequency must be > 0");
  if (!(distance_m > 0.0)) throw std::domain_error("itu_r_pl: distance must be > 0");
  return 20.0 * std::log10(params.f_mhz) + 10.0 * params.n * std::log10(distance_m) +
         params.l_floors_db - 28.0;
}

double winner2_pl(const WinnerParams& params, double distance_m) {
  if (!(params.f_ghz > 0.0)) throw std::domain_error("winner2_pl: frequency must be > 0");
  if (!(distance_m > 0.0)) throw std::domain_error("winner2_pl: distance must be > 0");
  return 20.0 * std::log10(params.f_ghz / 5.0) + 36.8 * std::log10(distance_m) +
         params.n_w * params.l_w_db + 43.8;
}

double mean_snr_from_budget(double tx_power_dbm, double path_loss_db, double noise_power_dbm) {
  const double snr_db = tx_power_dbm - path_loss_db - noise_power_dbm;
  if (!std::isfinite(snr_db)) throw std::domain_error("mean_snr_from_budget: non-finite budget");
  return db_to_linear(snr_db);
}

}  // namespace underlay
