// Copyright 2026 The nvpol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NVPOL_CONFIG_HPP
#define NVPOL_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

// Strict run-configuration handling for the command-line tools.
//
// A config file is a flat `key = value` document: one pair per line, '#'
// comments, blank lines allowed.  Parsing is deliberately unforgiving —
// unknown keys, duplicates, and malformed values are fatal with the line
// number attached — because a silently ignored typo in a physics
// parameter is worse than friction.
//
// Values resolve in three layers: built-in defaults, then the config
// file, then command-line flags.  The resolved document (raw strings, in
// declaration order) is what gets echoed into output headers, so a header
// stripped of its leading "# " is itself a valid config file that
// reproduces the run.

namespace nvpol {

// A parsed config file: ordered entries with their source line numbers.
struct ConfigDoc {
  struct Entry {
    std::string key;
    std::string value;
    int line = 0;
  };
  std::vector<Entry> entries;

  // Throws ConfigError (with line and key context) on unreadable files,
  // missing '=', empty or ill-formed keys.
  static ConfigDoc from_file(const std::filesystem::path& path);
};

// Declaration-ordered key-value store with defaults, file loading, flag
// overrides, and typed access.  All typed getters throw ConfigError
// naming the key (and the file line, when the value came from a file) on
// malformed values.
class Resolver {
 public:
  // Declares a key with its default (echoed verbatim when not
  // overridden).  Declaration order fixes the echo order.
  void declare(const std::string& key, const std::string& default_value);

  // Declares a key that must be provided by file or flag.
  void declare_required(const std::string& key);

  bool known(const std::string& key) const;

  // Applies a parsed file.  Unknown or duplicate keys are fatal.
  void load(const ConfigDoc& doc);

  // Applies a command-line override; the key must have been declared.
  void set_override(const std::string& key, const std::string& value);

  // Verifies that every required key received a value.
  void finalize() const;

  bool was_set(const std::string& key) const;
  const std::string& raw(const std::string& key) const;

  double get_double(const std::string& key) const;
  int get_int(const std::string& key) const;
  std::uint64_t get_u64(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  std::vector<double> get_double_list(const std::string& key) const;

  // Resolved (key, raw value) pairs in declaration order.
  std::vector<std::pair<std::string, std::string>> items() const;

 private:
  struct Item {
    std::string key;
    std::string value;
    bool required = false;
    bool set = false;
    int line = 0;  // file line the value came from, 0 otherwise
  };
  const Item& find(const std::string& key) const;
  Item& find(const std::string& key);
  std::vector<Item> items_;
};

}  // namespace nvpol

#endif  // NVPOL_CONFIG_HPP
