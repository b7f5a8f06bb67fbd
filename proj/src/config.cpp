// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The underlay authors
#include "underlay/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "underlay/errors.hpp"

namespace underlay {

namespace {

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

bool valid_key(const std::string& key) {
  if (key.empty()) return false;
  for (char c : key) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '_' || c == '.';
    if (!ok) return false;
  }
  return true;
}

double parse_double(const std::string& text, const std::string& context) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw parse_error(context + ": '" + text + "' is not a number");
  }
  return value;
}

std::int64_t parse_int(const std::string& text, const std::string& context) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw parse_error(context + ": '" + text + "' is not an integer");
  }
  return value;
}

std::uint64_t parse_uint64(const std::string& text, const std::string& context) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw parse_error(context + ": '" + text + "' is not an unsigned integer");
  }
  return value;
}

}  // namespace

KeyValueConfig KeyValueConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open config file: " + path.string());
  return from_stream(in, path.string());
}

KeyValueConfig KeyValueConfig::from_stream(std::istream& in, std::string source_name) {
  KeyValueConfig config;
  config.source_name_ = std::move(source_name);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string content = trim(line);
    if (content.empty()) continue;
    const std::string where = config.source_name_ + ":" + std::to_string(line_no);
    const auto eq = content.find('=');
    if (eq == std::string::npos) throw parse_error(where + ": expected 'key = value'");
    const std::string key = trim(content.substr(0, eq));
    const std::string value = trim(content.substr(eq + 1));
    if (!valid_key(key)) throw parse_error(where + ": bad key '" + key + "'");
    if (value.empty()) throw parse_error(where + ": empty value for key '" + key + "'");
    if (!config.values_.emplace(key, value).second) {
      throw parse_error(where + ": duplicate key '" + key + "'");
    }
  }
  return config;
}

bool KeyValueConfig::has(const std::string& key) const { return values_.count(key) != 0; }

const std::string& KeyValueConfig::raw(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) {
    throw config_error(source_name_ + ": missing required key '" + key + "'");
  }
  return it->second;
}

double KeyValueConfig::require_double(const std::string& key) const {
  return parse_double(raw(key), source_name_ + ": key '" + key + "'");
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  return has(key) ? require_double(key) : fallback;
}

std::int64_t KeyValueConfig::require_int(const std::string& key) const {
  return parse_int(raw(key), source_name_ + ": key '" + key + "'");
}

std::int64_t KeyValueConfig::get_int(const std::string& key, std::int64_t fallback) const {
  return has(key) ? require_int(key) : fallback;
}

std::uint64_t KeyValueConfig::get_uint64(const std::string& key, std::uint64_t fallback) const {
  return has(key) ? parse_uint64(raw(key), source_name_ + ": key '" + key + "'") : fallback;
}

std::string KeyValueConfig::require_string(const std::string& key) const { return raw(key); }

std::string KeyValueConfig::get_string(const std::string& key, std::string fallback) const {
  return has(key) ? raw(key) : std::move(fallback);
}

Eigen::Vector2d KeyValueConfig::require_pair(const std::string& key) const {
  const std::string& text = raw(key);
  const std::string context = source_name_ + ": key '" + key + "'";
  const auto comma = text.find(',');
  if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos) {
    throw parse_error(context + ": expected 'x,y'");
  }
  const double x = parse_double(trim(text.substr(0, comma)), context);
  const double y = parse_double(trim(text.substr(comma + 1)), context);
  return Eigen::Vector2d(x, y);
}

}  // namespace underlay
