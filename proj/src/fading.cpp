// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The underlay authors
#include "underlay/fading.hpp"

#include <cmath>
#include <stdexcept>

#include "underlay/rng.hpp"
#include "underlay/special_functions.hpp"

namespace underlay {

void validate(const NormalParams& params) {
  if (!std::isfinite(params.mu)) throw std::invalid_argument("NormalParams: mu must be finite");
  if (!(params.sigma > 0.0)) throw std::invalid_argument("NormalParams: sigma must be > 0");
}

void validate(const SnrDist& dist) {
  if (!(dist.gamma_bar > 0.0) || !std::isfinite(dist.gamma_bar)) {
    throw std::invalid_argument("SnrDist: gamma_bar must be finite and > 0");
  }
  if (dist.kind == FadingKind::nakagami && !(dist.m >= 0.5 && std::isfinite(dist.m))) {
    throw std::invalid_argument("SnrDist: Nakagami m must be finite and >= 0.5");
  }
}

double normal_cdf(double x, const NormalParams& params) {
  validate(params);
  const double z = (x - params.mu) / (params.sigma * std::sqrt(2.0));
  return 0.5 * (1.0 + error_function(z));
}

double snr_cdf(double gamma, const SnrDist& dist) {
  validate(dist);
  if (!(gamma >= 0.0)) throw std::domain_error("snr_cdf: gamma must be >= 0");
  if (dist.kind == FadingKind::rayleigh) return -std::expm1(-gamma / dist.gamma_bar);
  return regularized_lower_gamma(dist.m, dist.m * gamma / dist.gamma_bar);
}

void sample_snr(const SnrDist& dist, RandomStream& rng, Eigen::Ref<Eigen::ArrayXd> out) {
  validate(dist);
  if (dist.kind == FadingKind::rayleigh) {
    for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = rng.exponential(dist.gamma_bar);
  } else {
    const double scale = dist.gamma_bar / dist.m;
    for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = rng.gamma(dist.m, scale);
  }
}

Eigen::ArrayXd sample_snr(const SnrDist& dist, Eigen::Index count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("sample_snr: count must be >= 1");
  RandomStream rng(seed);
  Eigen::ArrayXd out(count);
  sample_snr(dist, rng, out);
  return out;
}

}  // namespace underlay
