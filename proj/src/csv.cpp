// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The underlay authors
#include "underlay/csv.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>

#include "underlay/errors.hpp"

namespace underlay {

namespace {

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

// Plain comma split; fields must not themselves contain commas.
std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(trim(line.substr(start)));
      return fields;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

double parse_double(const std::string& text, const std::string& where) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw parse_error(where + ": '" + text + "' is not a number");
  }
  return value;
}

// Reads and checks the header, returns data rows with their line numbers.
struct CsvReader {
  CsvReader(std::istream& in, std::string_view source_name, const std::string& header,
            std::size_t fields)
      : in_(in), source_(source_name), field_count_(fields) {
    std::string line;
    if (!std::getline(in_, line)) throw parse_error(source_ + ":1: missing header");
    if (trim(line) != header) {
      throw parse_error(source_ + ":1: expected header '" + header + "'");
    }
    line_no_ = 1;
  }

  bool next(std::vector<std::string>& fields, std::string& where) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (trim(line).empty()) continue;
      fields = split_fields(line);
      where = source_ + ":" + std::to_string(line_no_);
      if (fields.size() != field_count_) {
        throw parse_error(where + ": expected " + std::to_string(field_count_) +
                          " fields, got " + std::to_string(fields.size()));
      }
      return true;
    }
    return false;
  }

  std::istream& in_;
  std::string source_;
  std::size_t field_count_;
  int line_no_ = 0;
};

}  // namespace

std::string format_probability(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

std::string format_parameter(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

std::vector<Measurement> read_measurements_csv(std::istream& in, std::string_view source_name) {
  CsvReader reader(in, source_name, "link_id,distance_m,rx_power_dbm", 3);
  std::vector<Measurement> out;
  std::vector<std::string> fields;
  std::string where;
  while (reader.next(fields, where)) {
    if (fields[0].empty()) throw parse_error(where + ": empty link_id");
    Measurement m;
    m.link_id = fields[0];
    m.distance_m = parse_double(fields[1], where);
    m.rx_power_dbm = parse_double(fields[2], where);
    if (!(m.distance_m > 0.0)) throw parse_error(where + ": distance_m must be > 0");
    out.push_back(std::move(m));
  }
  if (out.empty()) throw parse_error(std::string(source_name) + ": no data rows");
  return out;
}

std::vector<SnrSampleSet> read_snr_samples_csv(std::istream& in, std::string_view source_name) {
  CsvReader reader(in, source_name, "snapshot_id,node_id,snr_linear", 3);
  std::vector<std::string> order;
  std::map<std::string, std::vector<double>> grouped;
  std::vector<std::string> fields;
  std::string where;
  while (reader.next(fields, where)) {
    if (fields[1].empty()) throw parse_error(where + ": empty node_id");
    const double snr = parse_double(fields[2], where);
    if (!(snr > 0.0)) throw parse_error(where + ": snr_linear must be > 0");
    auto [it, inserted] = grouped.try_emplace(fields[1]);
    if (inserted) order.push_back(fields[1]);
    it->second.push_back(snr);
  }
  if (order.empty()) throw parse_error(std::string(source_name) + ": no data rows");
  std::vector<SnrSampleSet> out;
  out.reserve(order.size());
  for (const std::string& node : order) {
    const std::vector<double>& values = grouped[node];
    SnrSampleSet set;
    set.node_id = node;
    set.samples = Eigen::Map<const Eigen::ArrayXd>(values.data(),
                                                   static_cast<Eigen::Index>(values.size()));
    out.push_back(std::move(set));
  }
  return out;
}

FadingFitRow to_fit_row(const std::string& node_id, const FadingFit& fit) {
  FadingFitRow row;
  row.node_id = node_id;
  row.model = fit.dist.kind == FadingKind::rayleigh ? "rayleigh" : "nakagami";
  row.mse = fit.mse;
  row.gamma_bar = fit.dist.gamma_bar;
  if (fit.dist.kind == FadingKind::nakagami) row.m = fit.dist.m;
  row.m_clamped = fit.m_clamped;
  return row;
}

std::vector<FadingFitRow> read_fits_csv(std::istream& in, std::string_view source_name) {
  CsvReader reader(in, source_name, "node_id,model,mse,gamma_bar,m,m_clamped", 6);
  std::vector<FadingFitRow> out;
  std::vector<std::string> fields;
  std::string where;
  while (reader.next(fields, where)) {
    FadingFitRow row;
    row.node_id = fields[0];
    row.model = fields[1];
    if (row.node_id.empty()) throw parse_error(where + ": empty node_id");
    if (row.model != "rayleigh" && row.model != "nakagami") {
      throw parse_error(where + ": model must be 'rayleigh' or 'nakagami'");
    }
    row.mse = parse_double(fields[2], where);
    row.gamma_bar = parse_double(fields[3], where);
    if (!(row.gamma_bar > 0.0)) throw parse_error(where + ": gamma_bar must be > 0");
    if (!fields[4].empty()) {
      row.m = parse_double(fields[4], where);
    } else if (row.model == "nakagami") {
      throw parse_error(where + ": nakagami row needs m");
    }
    if (fields[5] != "0" && fields[5] != "1") {
      throw parse_error(where + ": m_clamped must be 0 or 1");
    }
    row.m_clamped = fields[5] == "1";
    out.push_back(std::move(row));
  }
  return out;
}

void write_fits_csv(std::ostream& out, std::span<const FadingFitRow> rows) {
  out << "node_id,model,mse,gamma_bar,m,m_clamped\n";
  for (const FadingFitRow& row : rows) {
    out << row.node_id << ',' << row.model << ',' << format_probability(row.mse) << ','
        << format_parameter(row.gamma_bar) << ','
        << (row.m ? format_parameter(*row.m) : std::string()) << ',' << (row.m_clamped ? 1 : 0)
        << '\n';
  }
}

void write_decisions_csv(std::ostream& out, const DecisionMatrix& matrix,
                         std::span<const std::string> pr_names,
                         std::span<const std::string> id_names) {
  if (matrix.grid.rows() != static_cast<Eigen::Index>(pr_names.size()) ||
      matrix.grid.cols() != static_cast<Eigen::Index>(id_names.size())) {
    throw std::invalid_argument("write_decisions_csv: name counts must match the grid");
  }
  out << "id\\pr";
  for (const std::string& pr : pr_names) out << ',' << pr;
  out << '\n';
  for (Eigen::Index i = 0; i < matrix.grid.cols(); ++i) {
    out << id_names[static_cast<std::size_t>(i)];
    for (Eigen::Index p = 0; p < matrix.grid.rows(); ++p) out << ',' << (matrix.grid(p, i) ? 1 : 0);
    out << '\n';
  }
}

void write_probabilities_csv(std::ostream& out, const ConstraintProbabilities& probabilities,
                             const DecisionMatrix& matrix,
                             std::span<const std::string> pr_names,
                             std::span<const std::string> id_names) {
  if (probabilities.f_i.size() != static_cast<Eigen::Index>(pr_names.size()) ||
      probabilities.f_c.size() != static_cast<Eigen::Index>(id_names.size()) ||
      matrix.ic_bits.size() != probabilities.f_i.size() ||
      matrix.cc_bits.size() != probabilities.f_c.size()) {
    throw std::invalid_argument("write_probabilities_csv: shape mismatch");
  }
  out << "node_id,constraint,cdf_at_threshold,outage,bit\n";
  for (Eigen::Index p = 0; p < probabilities.f_i.size(); ++p) {
    const double f_i = probabilities.f_i[p];
    out << pr_names[static_cast<std::size_t>(p)] << ",ic," << format_probability(f_i) << ','
        << format_probability(1.0 - f_i) << ',' << (matrix.ic_bits[p] ? 1 : 0) << '\n';
  }
  for (Eigen::Index i = 0; i < probabilities.f_c.size(); ++i) {
    const double f_c = probabilities.f_c[i];
    out << id_names[static_cast<std::size_t>(i)] << ",cc," << format_probability(f_c) << ','
        << format_probability(f_c) << ',' << (matrix.cc_bits[i] ? 1 : 0) << '\n';
  }
}

}  // namespace underlay
