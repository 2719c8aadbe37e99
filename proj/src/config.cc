/*
 * Copyright 2026 The OutCenTR Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "outcentr/config.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>

#include "outcentr/csv.h"

namespace outcentr {

namespace {

bool valid_key(std::string_view key) {
  return !key.empty() && std::all_of(key.begin(), key.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           c == '.' || c == '-';
  });
}

}  // namespace

void ConfigSection::add(std::string key, std::string value, std::size_t line) {
  if (get(key)) {
    throw ConfigError("line " + std::to_string(line) + ": duplicate key '" +
                      key + "' in section [" + name_ + "]");
  }
  entries_.emplace_back(std::move(key), std::move(value));
}

std::optional<std::string> ConfigSection::get(std::string_view key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::string ConfigSection::get_string(std::string_view key,
                                      std::string fallback) const {
  return get(key).value_or(std::move(fallback));
}

double ConfigSection::get_double(std::string_view key, double fallback) const {
  const auto v = get(key);
  return v ? parse_config_double(key, *v) : fallback;
}

std::uint64_t ConfigSection::get_uint(std::string_view key,
                                      std::uint64_t fallback) const {
  const auto v = get(key);
  return v ? parse_config_uint(key, *v) : fallback;
}

bool ConfigSection::get_bool(std::string_view key, bool fallback) const {
  const auto v = get(key);
  if (!v) return fallback;
  if (*v == "true" || *v == "yes" || *v == "1") return true;
  if (*v == "false" || *v == "no" || *v == "0") return false;
  throw ConfigError("key '" + std::string(key) + "': expected a boolean, got '" +
                    *v + "'");
}

std::vector<std::string> ConfigSection::get_list(
    std::string_view key, std::vector<std::string> fallback) const {
  const auto v = get(key);
  return v ? split_list(*v) : std::move(fallback);
}

void ConfigSection::check_keys(
    std::initializer_list<std::string_view> allowed) const {
  for (const auto& [k, v] : entries_) {
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
      throw ConfigError("unknown key '" + k + "' in section [" + name_ + "]");
    }
  }
}

const ConfigSection* ConfigFile::find(std::string_view name) const {
  for (const auto& s : sections) {
    if (s.name() == name) return &s;
  }
  return nullptr;
}

ConfigFile parse_config(std::istream& in) {
  ConfigFile file;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const auto text = csv::trim(raw);
    if (text.empty() || text.front() == '#' || text.front() == ';') continue;
    if (text.front() == '[') {
      if (text.back() != ']') {
        throw ConfigError("line " + std::to_string(line) +
                          ": unterminated section header");
      }
      const std::string name(csv::trim(text.substr(1, text.size() - 2)));
      if (name.empty() || file.find(name)) {
        throw ConfigError("line " + std::to_string(line) +
                          ": empty or repeated section [" + name + "]");
      }
      file.sections.emplace_back(name, line);
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line) + ": expected key = value");
    }
    const std::string key(csv::trim(text.substr(0, eq)));
    if (!valid_key(key)) {
      throw ConfigError("line " + std::to_string(line) + ": invalid key '" + key +
                        "'");
    }
    if (file.sections.empty()) file.sections.emplace_back("", 0);
    file.sections.back().add(key, std::string(csv::trim(text.substr(eq + 1))),
                             line);
  }
  return file;
}

ConfigFile parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  return parse_config(in);
}

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    const auto comma = value.find(',', start);
    const auto item = csv::trim(value.substr(
        start, comma == std::string_view::npos ? std::string_view::npos
                                               : comma - start));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_config_double(std::string_view key, std::string_view value) {
  const auto v = csv::parse_double(value);
  if (!v) {
    throw ConfigError("key '" + std::string(key) + "': expected a number, got '" +
                      std::string(value) + "'");
  }
  return *v;
}

std::uint64_t parse_config_uint(std::string_view key, std::string_view value) {
  value = csv::trim(value);
  std::uint64_t v = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, v);
  if (value.empty() || ec != std::errc() || ptr != end) {
    throw ConfigError("key '" + std::string(key) +
                      "': expected a non-negative integer, got '" +
                      std::string(value) + "'");
  }
  return v;
}

}  // namespace outcentr
