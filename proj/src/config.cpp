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

#include "nvpol/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>

#include "nvpol/errors.hpp"

namespace nvpol {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

bool valid_key(const std::string& k) {
  if (k.empty()) return false;
  for (char c : k) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

double parse_double(const std::string& key, const std::string& value, int line) {
  const std::string v = trim(value);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw ConfigError("value '" + value + "' for key '" + key + "' is not a number", key, line);
  }
  return out;
}

}  // namespace

ConfigDoc ConfigDoc::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path.string() + "'", "config", 0);
  }
  ConfigDoc doc;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string stripped = trim(raw);
    if (stripped.empty() || stripped[0] == '#') continue;
    const size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("expected 'key = value', got '" + stripped + "'", stripped, line);
    }
    ConfigDoc::Entry e;
    e.key = trim(stripped.substr(0, eq));
    e.value = trim(stripped.substr(eq + 1));
    e.line = line;
    if (!valid_key(e.key)) {
      throw ConfigError("invalid key '" + e.key + "'", e.key, line);
    }
    doc.entries.push_back(std::move(e));
  }
  return doc;
}

void Resolver::declare(const std::string& key, const std::string& default_value) {
  items_.push_back(Item{key, default_value, false, false, 0});
}

void Resolver::declare_required(const std::string& key) {
  items_.push_back(Item{key, "", true, false, 0});
}

bool Resolver::known(const std::string& key) const {
  for (const Item& it : items_) {
    if (it.key == key) return true;
  }
  return false;
}

const Resolver::Item& Resolver::find(const std::string& key) const {
  for (const Item& it : items_) {
    if (it.key == key) return it;
  }
  throw ConfigError("unknown key '" + key + "'", key, 0);
}

Resolver::Item& Resolver::find(const std::string& key) {
  for (Item& it : items_) {
    if (it.key == key) return it;
  }
  throw ConfigError("unknown key '" + key + "'", key, 0);
}

void Resolver::load(const ConfigDoc& doc) {
  for (const auto& e : doc.entries) {
    if (!known(e.key)) {
      throw ConfigError("unknown key '" + e.key + "'", e.key, e.line);
    }
    Item& it = find(e.key);
    if (it.set && it.line != 0) {
      throw ConfigError("duplicate key '" + e.key + "' (first set on line " +
                            std::to_string(it.line) + ")",
                        e.key, e.line);
    }
    it.value = e.value;
    it.set = true;
    it.line = e.line;
  }
}

void Resolver::set_override(const std::string& key, const std::string& value) {
  Item& it = find(key);
  it.value = value;
  it.set = true;
  it.line = 0;  // flag-provided: no file line
}

void Resolver::finalize() const {
  for (const Item& it : items_) {
    if (it.required && !it.set) {
      throw ConfigError("required key '" + it.key + "' missing (set it in the config file or by flag)",
                        it.key, 0);
    }
  }
}

bool Resolver::was_set(const std::string& key) const { return find(key).set; }

const std::string& Resolver::raw(const std::string& key) const { return find(key).value; }

double Resolver::get_double(const std::string& key) const {
  const Item& it = find(key);
  return parse_double(key, it.value, it.line);
}

int Resolver::get_int(const std::string& key) const {
  const Item& it = find(key);
  const std::string v = trim(it.value);
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw ConfigError("value '" + it.value + "' for key '" + key + "' is not an integer", key,
                      it.line);
  }
  return out;
}

std::uint64_t Resolver::get_u64(const std::string& key) const {
  const Item& it = find(key);
  const std::string v = trim(it.value);
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw ConfigError(
        "value '" + it.value + "' for key '" + key + "' is not an unsigned integer", key, it.line);
  }
  return out;
}

bool Resolver::get_bool(const std::string& key) const {
  const Item& it = find(key);
  const std::string v = trim(it.value);
  if (v == "1" || v == "true") return true;
  if (v == "0" || v == "false") return false;
  throw ConfigError("value '" + it.value + "' for key '" + key + "' is not a boolean (use 0/1)",
                    key, it.line);
}

std::string Resolver::get_string(const std::string& key) const { return find(key).value; }

std::vector<double> Resolver::get_double_list(const std::string& key) const {
  const Item& it = find(key);
  std::vector<double> out;
  std::string v = it.value;
  size_t start = 0;
  while (start <= v.size()) {
    const size_t comma = v.find(',', start);
    const std::string part =
        (comma == std::string::npos) ? v.substr(start) : v.substr(start, comma - start);
    out.push_back(parse_double(key, part, it.line));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.empty()) {
    throw ConfigError("key '" + key + "' needs at least one value", key, it.line);
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> Resolver::items() const {
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(items_.size());
  for (const Item& it : items_) out.emplace_back(it.key, it.value);
  return out;
}

}  // namespace nvpol
