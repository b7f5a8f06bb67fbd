// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The underlay authors
#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>

namespace underlay {

// Flat "key = value" config with '#' comments. Keys are dotted lowercase
// identifiers; duplicates are rejected. require_* throws config_error when
// the key is absent and parse_error when the value does not parse.
class KeyValueConfig {
 public:
  static KeyValueConfig from_file(const std::filesystem::path& path);
  static KeyValueConfig from_stream(std::istream& in, std::string source_name);

  bool has(const std::string& key) const;

  double require_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  std::int64_t require_int(const std::string& key) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  std::uint64_t get_uint64(const std::string& key, std::uint64_t fallback) const;
  std::string require_string(const std::string& key) const;
  std::string get_string(const std::string& key, std::string fallback) const;

  // "x,y" pair.
  Eigen::Vector2d require_pair(const std::string& key) const;

  const std::string& source_name() const { return source_name_; }

 private:
  const std::string& raw(const std::string& key) const;

  std::map<std::string, std::string> values_;
  std::string source_name_;
};

}  // namespace underlay
