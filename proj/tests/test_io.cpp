// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The underlay authors
#include <doctest.h>

#include <sstream>
#include <string>

#include "underlay/config.hpp"
#include "underlay/csv.hpp"
#include "underlay/errors.hpp"

using underlay::FadingFitRow;
using underlay::KeyValueConfig;

namespace {

std::string message_of(const std::exception& e) { return e.what(); }

template <typename Fn>
std::string thrown_message(Fn&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return message_of(e);
  }
  return {};
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("measurements csv parses well-formed input") {
  std::istringstream in(
      "link_id,distance_m,rx_power_dbm\n"
      "L1, 1.0, -34.19\n"
      "\n"
      "L2,10,-68.79\n");
  const auto ms = underlay::read_measurements_csv(in, "m.csv");
  REQUIRE(ms.size() == 2);
  CHECK(ms[0].link_id == "L1");
  CHECK(ms[0].distance_m == 1.0);
  CHECK(ms[0].rx_power_dbm == -34.19);
  CHECK(ms[1].distance_m == 10.0);
}

TEST_CASE("measurements csv rejects malformed input with line numbers") {
  std::istringstream bad_header("distance_m,rx_power_dbm\n1,-34\n");
  const std::string header_msg = thrown_message(
      [&] { underlay::read_measurements_csv(bad_header, "m.csv"); });
  CHECK(header_msg.find("m.csv:1") != std::string::npos);

  std::istringstream short_row("link_id,distance_m,rx_power_dbm\nL1,1.0\n");
  const std::string row_msg =
      thrown_message([&] { underlay::read_measurements_csv(short_row, "m.csv"); });
  CHECK(row_msg.find("m.csv:2") != std::string::npos);

  std::istringstream bad_number("link_id,distance_m,rx_power_dbm\nL1,1.0,-34\nL2,ten,-60\n");
  const std::string number_msg =
      thrown_message([&] { underlay::read_measurements_csv(bad_number, "m.csv"); });
  CHECK(number_msg.find("m.csv:3") != std::string::npos);

  std::istringstream nonpositive("link_id,distance_m,rx_power_dbm\nL1,0,-34\n");
  CHECK_THROWS_AS(underlay::read_measurements_csv(nonpositive, "m.csv"), underlay::parse_error);

  std::istringstream empty("");
  CHECK_THROWS_AS(underlay::read_measurements_csv(empty, "m.csv"), underlay::parse_error);

  std::istringstream header_only("link_id,distance_m,rx_power_dbm\n");
  CHECK_THROWS_AS(underlay::read_measurements_csv(header_only, "m.csv"), underlay::parse_error);
}

TEST_CASE("snr samples csv groups by node in first-appearance order") {
  std::istringstream in(
      "snapshot_id,node_id,snr_linear\n"
      "0,ID2,4.0\n"
      "0,ID1,1.5\n"
      "1,ID2,2.5\n"
      "1,ID1,0.5\n");
  const auto sets = underlay::read_snr_samples_csv(in, "s.csv");
  REQUIRE(sets.size() == 2);
  CHECK(sets[0].node_id == "ID2");
  REQUIRE(sets[0].samples.size() == 2);
  CHECK(sets[0].samples[0] == 4.0);
  CHECK(sets[0].samples[1] == 2.5);
  CHECK(sets[1].node_id == "ID1");
  CHECK(sets[1].samples[1] == 0.5);

  std::istringstream nonpositive("snapshot_id,node_id,snr_linear\n0,ID1,0.0\n");
  CHECK_THROWS_AS(underlay::read_snr_samples_csv(nonpositive, "s.csv"), underlay::parse_error);
}

TEST_CASE("fits csv round-trips") {
  std::vector<FadingFitRow> rows;
  rows.push_back(FadingFitRow{"PR1", "rayleigh", 1.25e-3, 266.405829, std::nullopt, false});
  rows.push_back(FadingFitRow{"PR1", "nakagami", 7.5e-4, 266.405829, 1.13042271, false});
  rows.push_back(FadingFitRow{"ID3", "nakagami", 2.0e-4, 179.0, 0.5, true});
  std::ostringstream out;
  underlay::write_fits_csv(out, rows);

  std::istringstream in(out.str());
  const auto parsed = underlay::read_fits_csv(in, "fits.csv");
  REQUIRE(parsed.size() == 3);
  CHECK(parsed[0].node_id == "PR1");
  CHECK(parsed[0].model == "rayleigh");
  CHECK(!parsed[0].m.has_value());
  CHECK(parsed[1].m.has_value());
  CHECK(parsed[1].m.value() == doctest::Approx(1.13042271).epsilon(1e-9));
  CHECK(parsed[1].gamma_bar == doctest::Approx(266.405829).epsilon(1e-9));
  CHECK(parsed[2].m_clamped);

  const std::string text = out.str();
  CHECK(text.rfind("node_id,model,mse,gamma_bar,m,m_clamped\n", 0) == 0);
}

TEST_CASE("fits csv rejects inconsistent rows") {
  std::istringstream missing_m(
      "node_id,model,mse,gamma_bar,m,m_clamped\n"
      "PR1,nakagami,1e-3,266,,0\n");
  CHECK_THROWS_AS(underlay::read_fits_csv(missing_m, "fits.csv"), underlay::parse_error);

  std::istringstream bad_model(
      "node_id,model,mse,gamma_bar,m,m_clamped\n"
      "PR1,rician,1e-3,266,1.0,0\n");
  CHECK_THROWS_AS(underlay::read_fits_csv(bad_model, "fits.csv"), underlay::parse_error);

  std::istringstream bad_flag(
      "node_id,model,mse,gamma_bar,m,m_clamped\n"
      "PR1,nakagami,1e-3,266,1.0,2\n");
  CHECK_THROWS_AS(underlay::read_fits_csv(bad_flag, "fits.csv"), underlay::parse_error);
}

TEST_CASE("decision and probability writers emit stable golden text") {
  using underlay::BoolVector;
  BoolVector ic(2), cc(3);
  ic << true, false;
  cc << true, true, false;
  const auto matrix = underlay::make_decision_matrix(ic, cc);
  const std::vector<std::string> pr_names = {"PR1", "PR2"};
  const std::vector<std::string> id_names = {"ID1", "ID2", "ID3"};

  std::ostringstream decisions;
  underlay::write_decisions_csv(decisions, matrix, pr_names, id_names);
  CHECK(decisions.str() ==
        "id\\pr,PR1,PR2\n"
        "ID1,1,0\n"
        "ID2,1,0\n"
        "ID3,0,0\n");

  underlay::ConstraintProbabilities probs;
  probs.f_i.resize(2);
  probs.f_i << 0.25, 0.9375;
  probs.f_c.resize(3);
  probs.f_c << 0.0625, 0.5, 0.75;
  std::ostringstream probabilities;
  underlay::write_probabilities_csv(probabilities, probs, matrix, pr_names, id_names);
  CHECK(probabilities.str() ==
        "node_id,constraint,cdf_at_threshold,outage,bit\n"
        "PR1,ic,0.25,0.75,1\n"
        "PR2,ic,0.9375,0.0625,0\n"
        "ID1,cc,0.0625,0.0625,1\n"
        "ID2,cc,0.5,0.5,1\n"
        "ID3,cc,0.75,0.75,0\n");
}

TEST_CASE("numeric formatting is fixed width in significant digits") {
  CHECK(underlay::format_probability(0.6321205588285577) == "0.632121");
  CHECK(underlay::format_probability(1.0) == "1");
  CHECK(underlay::format_probability(1e-7) == "1e-07");
  CHECK(underlay::format_parameter(266.40582912345) == "266.405829");
  CHECK(underlay::format_parameter(1.5) == "1.5");
}

TEST_CASE("key-value config parses values comments and pairs") {
  std::istringstream in(
      "# deployment\n"
      "tx_power = 10.0  # dBm\n"
      "seed = 42\n"
      "label = office\n"
      "geometry.cr = 1.5,-2\n"
      "\n");
  const auto config = KeyValueConfig::from_stream(in, "c.conf");
  CHECK(config.require_double("tx_power") == 10.0);
  CHECK(config.get_int("seed", 0) == 42);
  CHECK(config.get_uint64("seed", 0) == 42);
  CHECK(config.require_string("label") == "office");
  CHECK(config.get_double("absent", -1.0) == -1.0);
  CHECK(config.get_string("absent", "x") == "x");
  CHECK(config.has("tx_power"));
  CHECK(!config.has("absent"));
  const Eigen::Vector2d pair = config.require_pair("geometry.cr");
  CHECK(pair.x() == 1.5);
  CHECK(pair.y() == -2.0);
}

TEST_CASE("key-value config rejects malformed input") {
  std::istringstream duplicate("a = 1\na = 2\n");
  CHECK_THROWS_AS(KeyValueConfig::from_stream(duplicate, "c.conf"), underlay::parse_error);

  std::istringstream no_equals("a 1\n");
  CHECK_THROWS_AS(KeyValueConfig::from_stream(no_equals, "c.conf"), underlay::parse_error);

  std::istringstream bad_key("a b = 1\n");
  CHECK_THROWS_AS(KeyValueConfig::from_stream(bad_key, "c.conf"), underlay::parse_error);

  std::istringstream empty_value("a =\n");
  CHECK_THROWS_AS(KeyValueConfig::from_stream(empty_value, "c.conf"), underlay::parse_error);

  std::istringstream ok("a = 1\npair = 1,2\n");
  const auto config = KeyValueConfig::from_stream(ok, "c.conf");
  CHECK_THROWS_AS(config.require_double("missing"), underlay::config_error);
  const std::string missing_msg = thrown_message([&] { config.require_double("missing"); });
  CHECK(missing_msg.find("missing required key 'missing'") != std::string::npos);
  CHECK_THROWS_AS(config.require_int("pair"), underlay::parse_error);
  CHECK_THROWS_AS(config.require_pair("a"), underlay::parse_error);
}

}  // TEST_SUITE
