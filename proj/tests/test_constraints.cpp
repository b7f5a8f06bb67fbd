// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The underlay authors
#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "underlay/constraints.hpp"
#include "underlay/errors.hpp"
#include "underlay/rng.hpp"
#include "underlay/scenario.hpp"
#include "underlay/units.hpp"

using underlay::BoolVector;
using underlay::ConstraintConfig;
using underlay::FadingKind;
using underlay::RandomStream;
using underlay::SnrDist;

namespace {

// Fitted outdoor links (nakagami), in node order.
const std::array<SnrDist, 4> kPrDists = {
    SnrDist{FadingKind::nakagami, 266.0, 1.13},
    SnrDist{FadingKind::nakagami, 489.0, 0.98},
    SnrDist{FadingKind::nakagami, 57.34, 1.11},
    SnrDist{FadingKind::nakagami, 94.20, 1.25},
};

// Fitted indoor access links (nakagami), in node order.
const std::array<SnrDist, 5> kIdDists = {
    SnrDist{FadingKind::nakagami, 952.0, 1.23},
    SnrDist{FadingKind::nakagami, 3.65e4, 1.28},
    SnrDist{FadingKind::nakagami, 179.0, 1.17},
    SnrDist{FadingKind::nakagami, 413.0, 1.16},
    SnrDist{FadingKind::nakagami, 6.99e4, 1.23},
};

const ConstraintConfig kReference{-90.0, 0.1, 7.5, 0.1, -119.5};

BoolVector bits(std::initializer_list<bool> values) {
  BoolVector out(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (bool b : values) out[i++] = b;
  return out;
}

SnrDist random_dist(RandomStream& rng) {
  SnrDist dist;
  dist.kind = rng.uniform() < 0.5 ? FadingKind::rayleigh : FadingKind::nakagami;
  dist.gamma_bar = std::pow(10.0, 4.0 * rng.uniform() - 1.0);
  dist.m = 0.5 + 3.0 * rng.uniform();
  return dist;
}

}  // namespace

TEST_SUITE("constraints") {

TEST_CASE("interference cdf is the snr cdf at the noise-normalized threshold") {
  // sigma^2 = 0 dBm divides by exactly 1, so the two routes coincide.
  const SnrDist dist{FadingKind::nakagami, 266.0, 1.13};
  for (double i_th : {-5.0, 0.0, 10.0, 24.0}) {
    CHECK(underlay::interference_cdf(i_th, 0.0, dist) ==
          underlay::snr_cdf(underlay::db_to_linear(i_th), dist));
  }

  // Generic noise level: the ratio route must match to rounding.
  RandomStream rng(71);
  for (int trial = 0; trial < 200; ++trial) {
    const SnrDist d = random_dist(rng);
    const double i_th = -120.0 + 60.0 * rng.uniform();
    const double noise = -130.0 + 40.0 * rng.uniform();
    const double direct = underlay::interference_cdf(i_th, noise, d);
    const double ratio = underlay::db_to_linear(i_th) / underlay::db_to_linear(noise);
    CHECK(direct == doctest::Approx(underlay::snr_cdf(ratio, d)).epsilon(1e-12));
  }
}

TEST_CASE("interference cdf closed point at threshold equal to noise") {
  // i_th == sigma^2 makes the ratio exactly 1; Rayleigh then gives 1 - e^-1.
  const SnrDist unit{FadingKind::rayleigh, 1.0, 1.0};
  CHECK(underlay::interference_cdf(-90.0, -90.0, unit) ==
        doctest::Approx(0.6321205588285577).epsilon(1e-12));
}

TEST_CASE("interference values and bits for the reference outdoor links") {
  const auto probs = underlay::evaluate_constraint_probabilities(kPrDists, kIdDists, kReference);
  REQUIRE(probs.f_i.size() == 4);
  CHECK(probs.f_i[0] == doctest::Approx(0.970481338).epsilon(1e-8));
  CHECK(probs.f_i[1] == doctest::Approx(0.837565752).epsilon(1e-8));
  CHECK(probs.f_i[2] == doctest::Approx(0.999999953).epsilon(1e-8));
  CHECK(probs.f_i[3] == doctest::Approx(0.99998475).epsilon(1e-8));

  const BoolVector expected = bits({true, false, true, true});
  for (int p = 0; p < 4; ++p) {
    CHECK(underlay::check_ic(kPrDists[static_cast<std::size_t>(p)], kReference) == expected[p]);
  }
}

TEST_CASE("capacity cdf closed points") {
  for (const SnrDist& dist : kIdDists) {
    CHECK(underlay::capacity_cdf(0.0, dist) == 0.0);  // 2^0 - 1 leaves no mass below
  }
  // Rayleigh, gamma_bar = 1, c_th = 1: F = 1 - e^-(2^1 - 1).
  const SnrDist unit{FadingKind::rayleigh, 1.0, 1.0};
  CHECK(underlay::capacity_cdf(1.0, unit) == doctest::Approx(0.6321205588285577).epsilon(1e-12));

  RandomStream rng(72);
  for (int trial = 0; trial < 200; ++trial) {
    const SnrDist d = random_dist(rng);
    const double c_th = 12.0 * rng.uniform();
    CHECK(underlay::capacity_cdf(c_th, d) ==
          doctest::Approx(underlay::snr_cdf(std::exp2(c_th) - 1.0, d)).epsilon(1e-12));
  }
}

TEST_CASE("capacity values and bits for the reference access links") {
  // The third value pins down why that link's reference decision is not
  // reproducible: F_C(7.5) ~ 0.62 forces a disabled bit at any sane eps.
  const auto probs = underlay::evaluate_constraint_probabilities(kPrDists, kIdDists, kReference);
  REQUIRE(probs.f_c.size() == 5);
  CHECK(probs.f_c[0] == doctest::Approx(0.130852921).epsilon(1e-8));
  CHECK(probs.f_c[1] == doctest::Approx(0.00132118861).epsilon(1e-8));
  CHECK(probs.f_c[2] == doctest::Approx(0.624706876).epsilon(1e-8));
  CHECK(probs.f_c[3] == doctest::Approx(0.323629752).epsilon(1e-8));
  CHECK(probs.f_c[4] == doctest::Approx(0.000751369694).epsilon(1e-8));

  const BoolVector expected = bits({false, true, false, false, true});
  for (int i = 0; i < 5; ++i) {
    CHECK(underlay::check_cc(kIdDists[static_cast<std::size_t>(i)], kReference) == expected[i]);
  }
}

TEST_CASE("constraint boundaries tie in favor of access") {
  const SnrDist dist{FadingKind::nakagami, 266.0, 1.13};
  ConstraintConfig config = kReference;
  config.eps_i_out = 1.0 - underlay::interference_cdf(config.i_th_dbm, config.noise_power_dbm, dist);
  CHECK(underlay::check_ic(dist, config));
  config.eps_i_out = std::nextafter(config.eps_i_out, 0.0);
  CHECK(!underlay::check_ic(dist, config));

  config = kReference;
  config.eps_c_out = underlay::capacity_cdf(config.c_th, dist);
  CHECK(underlay::check_cc(dist, config));
  config.eps_c_out = std::nextafter(config.eps_c_out, 0.0);
  CHECK(!underlay::check_cc(dist, config));
}

TEST_CASE("bits are monotone in the outage budget and the mean snr") {
  RandomStream rng(73);
  for (int trial = 0; trial < 50; ++trial) {
    const SnrDist d = random_dist(rng);
    ConstraintConfig config = kReference;
    bool prev_ic = false, prev_cc = false;
    for (double eps = 0.001; eps < 1.0; eps += 0.05) {
      config.eps_i_out = eps;
      config.eps_c_out = eps;
      const bool ic = underlay::check_ic(d, config);
      const bool cc = underlay::check_cc(d, config);
      CHECK(ic >= prev_ic);  // once passing, stays passing as eps grows
      CHECK(cc >= prev_cc);
      prev_ic = ic;
      prev_cc = cc;
    }
  }

  // Raising gamma_bar can only turn the capacity bit on and the
  // interference bit off.
  SnrDist d{FadingKind::nakagami, 1.0, 1.2};
  bool prev_cc = false, prev_ic_off = false;
  for (double g = 1.0; g < 1e6; g *= 2.0) {
    d.gamma_bar = g;
    const bool cc = underlay::check_cc(d, kReference);
    const bool ic_off = !underlay::check_ic(d, kReference);
    CHECK(cc >= prev_cc);
    CHECK(ic_off >= prev_ic_off);
    prev_cc = cc;
    prev_ic_off = ic_off;
  }
}

TEST_CASE("decision matrix is the outer and of the bit vectors") {
  const auto matrix = underlay::make_decision_matrix(bits({true, false, true, true}),
                                                     bits({false, true, true, false, true}));
  REQUIRE(matrix.grid.rows() == 4);
  REQUIRE(matrix.grid.cols() == 5);
  for (Eigen::Index p = 0; p < 4; ++p) {
    for (Eigen::Index i = 0; i < 5; ++i) {
      CHECK(matrix.grid(p, i) == (matrix.ic_bits[p] && matrix.cc_bits[i]));
    }
  }
  // Column 0 and 3 fully off, row 1 fully off.
  CHECK(!matrix.grid.col(0).any());
  CHECK(!matrix.grid.col(3).any());
  CHECK(!matrix.grid.row(1).any());
  CHECK(matrix.grid.cast<int>().sum() == 9);

  const auto tiny = underlay::make_decision_matrix(bits({true}), bits({true}));
  CHECK(tiny.grid(0, 0));
  CHECK_THROWS_AS(underlay::make_decision_matrix(bits({}), bits({true})), std::invalid_argument);
}

TEST_CASE("grid decisions for the reference deployment") {
  const auto matrix = underlay::build_decision_matrix(kPrDists, kIdDists, kReference);
  const BoolVector ic = bits({true, false, true, true});
  const BoolVector cc = bits({false, true, false, false, true});
  for (Eigen::Index p = 0; p < 4; ++p) CHECK(matrix.ic_bits[p] == ic[p]);
  for (Eigen::Index i = 0; i < 5; ++i) CHECK(matrix.cc_bits[i] == cc[i]);
  for (Eigen::Index p = 0; p < 4; ++p) {
    for (Eigen::Index i = 0; i < 5; ++i) {
      CHECK(matrix.grid(p, i) == (ic[p] && cc[i]));
    }
  }
}

TEST_CASE("config validation rejects out-of-range parameters") {
  CHECK_NOTHROW(underlay::validate(kReference));
  ConstraintConfig config = kReference;
  config.eps_i_out = 0.0;
  CHECK_THROWS_AS(underlay::validate(config), std::invalid_argument);
  config = kReference;
  config.eps_c_out = 1.0;
  CHECK_THROWS_AS(underlay::validate(config), std::invalid_argument);
  config = kReference;
  config.c_th = -0.1;
  CHECK_THROWS_AS(underlay::validate(config), std::invalid_argument);
  config = kReference;
  config.i_th_dbm = std::nan("");
  CHECK_THROWS_AS(underlay::validate(config), std::invalid_argument);
}

TEST_CASE("feasible noise window for the reference interference pattern") {
  const BoolVector target = bits({true, false, true, true});
  const Eigen::ArrayXd window =
      underlay::feasible_noise_window(kPrDists, -90.0, 0.1, target, -130.0, -100.0, 0.1);
  REQUIRE(window.size() > 0);
  CHECK(window.minCoeff() == doctest::Approx(-120.5).epsilon(1e-9));
  CHECK(window.maxCoeff() == doctest::Approx(-117.8).epsilon(1e-9));
  // The window is a contiguous grid run containing the calibrated default.
  CHECK(window.size() == 28);
  bool has_default = false;
  for (Eigen::Index k = 0; k < window.size(); ++k) {
    if (std::abs(window[k] - underlay::kReferencePrNoiseDbm) < 1e-9) has_default = true;
  }
  CHECK(has_default);
}

TEST_CASE("closed forms agree with monte carlo outage estimates") {
  RandomStream rng(74);
  for (int trial = 0; trial < 4; ++trial) {
    const SnrDist d = random_dist(rng);
    const double i_th = underlay::linear_to_db(d.gamma_bar) - 115.0;  // inside the mass
    const double f_i = underlay::interference_cdf(i_th, -120.0, d);
    const auto mc_i = underlay::monte_carlo_probability(
        d, underlay::db_to_linear(i_th) / underlay::db_to_linear(-120.0), underlay::Tail::lower,
        100000, 900 + static_cast<std::uint64_t>(trial));
    CHECK(std::abs(f_i - mc_i.probability) < 0.01);

    const double c_th = std::log2(1.0 + d.gamma_bar);  // median-ish capacity point
    const double f_c = underlay::capacity_cdf(c_th, d);
    const auto mc_c =
        underlay::monte_carlo_probability(d, std::exp2(c_th) - 1.0, underlay::Tail::lower, 100000,
                                          1900 + static_cast<std::uint64_t>(trial));
    CHECK(std::abs(f_c - mc_c.probability) < 0.01);
  }
}

}  // TEST_SUITE
