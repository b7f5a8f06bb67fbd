// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The underlay authors
#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <stdexcept>

#include "underlay/errors.hpp"

namespace underlay {

// SplitMix64 finalizer. Used to hash a root seed plus stream labels into
// engine seeds so independently keyed streams are decorrelated by construction.
inline constexpr std::uint64_t split_mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t derive_stream_seed(std::uint64_t seed,
                                                  std::initializer_list<std::uint64_t> labels) noexcept {
  std::uint64_t h = split_mix64(seed);
  for (std::uint64_t label : labels) h = split_mix64(h ^ label);
  return h;
}

// Deterministic sampler over mt19937_64. Every variate is built from explicit
// 53-bit uniforms, so sequences are byte-identical across platforms and
// standard libraries (std::*_distribution sequences are not portable).
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1]; safe as a log() argument.
  double uniform_positive() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }

  // Standard normal via Box-Muller. Two uniforms per draw, no cached spare,
  // so the stream position never depends on call history.
  double normal() {
    const double u1 = uniform_positive();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  double normal(double mu, double sigma) { return mu + sigma * normal(); }

  // Exponential with the given mean, by inverse CDF.
  double exponential(double mean) { return -mean * std::log(uniform_positive()); }

  // Gamma(shape, scale) via the Marsaglia-Tsang squeeze; shape < 1 uses the
  // Gamma(shape + 1) boost X * U^(1/shape).
  double gamma(double shape, double scale) {
    if (!(shape > 0.0) || !(scale > 0.0)) {
      throw std::invalid_argument("gamma sampler: shape and scale must be > 0");
    }
    if (shape < 1.0) {
      const double boost = std::pow(uniform_positive(), 1.0 / shape);
      return gamma(shape + 1.0, scale) * boost;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (int attempt = 0; attempt < 10000; ++attempt) {
      double z;
      double v;
      do {
        z = normal();
        v = 1.0 + c * z;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform_positive();
      if (u < 1.0 - 0.0331 * z * z * z * z) return d * v * scale;
      if (std::log(u) < 0.5 * z * z + d * (1.0 - v + std::log(v))) return d * v * scale;
    }
    throw numeric_error("gamma sampler: rejection loop exceeded iteration cap");
  }

 private:
  static constexpr double kPi = 3.14159265358979323846;
  std::mt19937_64 engine_;
};

}  // namespace underlay
