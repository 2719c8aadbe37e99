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

// Flat configuration files.
//
// Grammar, one construct per line:
//
//   file     := { line }
//   line     := blank | comment | section | entry
//   comment  := ('#' | ';') any-text
//   section  := '[' name ']'
//   entry    := key '=' value
//
// Leading and trailing blanks around names, keys and values are ignored.
// Keys are [A-Za-z0-9_.-]+ and must be unique inside a section. Entries
// before the first section header belong to the unnamed section "".
// Values are raw text; list values are comma separated.

#ifndef OUTCENTR_CONFIG_H_
#define OUTCENTR_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace outcentr {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigSection {
 public:
  ConfigSection(std::string name, std::size_t line)
      : name_(std::move(name)), line_(line) {}

  const std::string& name() const { return name_; }
  std::size_t line() const { return line_; }
  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }
  void add(std::string key, std::string value, std::size_t line);

  std::optional<std::string> get(std::string_view key) const;
  std::string get_string(std::string_view key, std::string fallback) const;
  double get_double(std::string_view key, double fallback) const;
  std::uint64_t get_uint(std::string_view key, std::uint64_t fallback) const;
  bool get_bool(std::string_view key, bool fallback) const;
  std::vector<std::string> get_list(std::string_view key,
                                    std::vector<std::string> fallback) const;

  // Throws ConfigError naming the first key not in `allowed`.
  void check_keys(std::initializer_list<std::string_view> allowed) const;

 private:
  std::string name_;
  std::size_t line_;
  std::vector<std::pair<std::string, std::string>> entries_;
};

struct ConfigFile {
  std::vector<ConfigSection> sections;

  const ConfigSection* find(std::string_view name) const;
};

ConfigFile parse_config(std::istream& in);
ConfigFile parse_config_file(const std::filesystem::path& path);

std::vector<std::string> split_list(std::string_view value);
double parse_config_double(std::string_view key, std::string_view value);
std::uint64_t parse_config_uint(std::string_view key, std::string_view value);

}  // namespace outcentr

#endif  // OUTCENTR_CONFIG_H_
