// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The underlay authors
#pragma once

#include <Eigen/Core>
#include <cstdint>

namespace underlay {

class RandomStream;

struct NormalParams {
  double mu;
  double sigma;  // > 0
};

enum class FadingKind { rayleigh, nakagami };

// Small-scale SNR law. Rayleigh fading gives exponentially distributed SNR
// with mean gamma_bar; Nakagami-m gives Gamma SNR with shape m and scale
// gamma_bar / m. m < 0.5 is outside the physical Nakagami range.
struct SnrDist {
  FadingKind kind;
  double gamma_bar;  // mean SNR, linear, > 0
  double m = 1.0;    // Nakagami shape, >= 0.5; ignored for Rayleigh
};

void validate(const NormalParams& params);
void validate(const SnrDist& dist);

double normal_cdf(double x, const NormalParams& params);

// F_gamma(x): 1 - e^(-x / gamma_bar) for Rayleigh, P(m, m x / gamma_bar) for
// Nakagami. The two coincide to rounding at m = 1.
double snr_cdf(double gamma, const SnrDist& dist);

// Deterministic draws; the seed fully determines the array.
Eigen::ArrayXd sample_snr(const SnrDist& dist, Eigen::Index count, std::uint64_t seed);

// Same draws continuing an existing stream (used when a caller interleaves
// other variates on the stream).
void sample_snr(const SnrDist& dist, RandomStream& rng, Eigen::Ref<Eigen::ArrayXd> out);

}  // namespace underlay
