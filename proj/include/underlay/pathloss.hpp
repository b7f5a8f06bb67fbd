// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The underlay authors
#pragma once

namespace underlay {

// Log-distance model: PL(d) = pl_d0_db + 10 n log10(d / d0_m).
struct LogDistanceParams {
  double pl_d0_db;  // loss at the reference distance
  double d0_m;      // reference distance, > 0
  double n;         // path-loss exponent
};

// ITU-R P.1238 indoor model: PL(d) = 20 log10(f_mhz) + 10 n log10(d) + l_floors_db - 28.
// Frequency in MHz here; the WINNER II model below takes GHz. The unit split
// follows the source models, callers convert.
struct ItuRParams {
  double f_mhz;
  double n;
  double l_floors_db;  // total floor-penetration loss, 0 for same-floor links
};

// WINNER II A1 rooms-to-corridor NLOS model:
// PL(d) = 20 log10(f_ghz / 5) + 36.8 log10(d) + n_w * l_w_db + 43.8.
struct WinnerParams {
  double f_ghz;
  double l_w_db;  // per-wall loss: 5 dB light walls, 15 dB heavy walls
  double n_w;     // wall count along the path, may be fractional (an average)
};

double log_distance_pl(const LogDistanceParams& params, double distance_m);
double itu_r_pl(const ItuRParams& params, double distance_m);
double winner2_pl(const WinnerParams& params, double distance_m);

// Mean SNR (linear) implied by a dBm link budget:
// 10^((tx_power - path_loss - noise_power) / 10).
double mean_snr_from_budget(double tx_power_dbm, double path_loss_db, double noise_power_dbm);

}  // namespace underlay
