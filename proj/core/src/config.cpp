// Copyright 2026 The mmw-mobility Authors
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

#include "mmw/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace mmw {
namespace {

std::string Trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool ValidKey(const std::string& key) {
  if (key.empty()) return false;
  return std::all_of(key.begin(), key.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
  });
}

bool ParseDouble(const std::string& text, double* out) {
  std::istringstream is(text);
  is.imbue(std::locale::classic());
  is >> *out;
  return !is.fail() && (is >> std::ws).eof();
}

}  // namespace

ConfigError::ConfigError(const std::string& source, int line,
                         const std::string& key, const std::string& message)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : "") +
                         ": " + (key.empty() ? "" : "'" + key + "': ") +
                         message),
      line_(line),
      key_(key) {}

Config Config::Parse(std::string_view text, const std::string& source) {
  Config c;
  c.source_ = source;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string body = Trim(std::string_view(raw).substr(0, raw.find('#')));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source, line, "", "expected 'key = value', got '" +
                                              body + "'");
    }
    const std::string key = Trim(std::string_view(body).substr(0, eq));
    const std::string value = Trim(std::string_view(body).substr(eq + 1));
    if (!ValidKey(key)) throw ConfigError(source, line, key, "malformed key");
    if (value.empty()) throw ConfigError(source, line, key, "missing value");
    c.entries_[key] = {value, line};
  }
  return c;
}

Config Config::Load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError(path, 0, "", "cannot open config file");
  std::ostringstream ss;
  ss << f.rdbuf();
  return Parse(ss.str(), path);
}

void Config::Set(const std::string& key, const std::string& value, int line) {
  if (!ValidKey(key)) throw ConfigError(source_, line, key, "malformed key");
  entries_[key] = {value, line};
}

void Config::ApplyOverride(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("--set", 0, assignment, "expected key=value");
  }
  const std::string key = Trim(std::string_view(assignment).substr(0, eq));
  const std::string value = Trim(std::string_view(assignment).substr(eq + 1));
  if (!ValidKey(key)) throw ConfigError("--set", 0, key, "malformed key");
  if (value.empty()) throw ConfigError("--set", 0, key, "missing value");
  entries_[key] = {value, 0};
}

const Config::Entry& Config::At(const std::string& key) const {
  return entries_.at(key);
}

void Config::Fail(const std::string& key, const std::string& msg) const {
  const int line = Has(key) ? At(key).line : 0;
  throw ConfigError(line > 0 ? source_ : "--set", line, key, msg);
}

std::string Config::GetString(const std::string& key,
                              const std::string& def) const {
  return Has(key) ? At(key).value : def;
}

double Config::GetDouble(const std::string& key, double def) const {
  if (!Has(key)) return def;
  double v = 0.0;
  if (!ParseDouble(At(key).value, &v)) Fail(key, "expected a number");
  return v;
}

std::int64_t Config::GetInt(const std::string& key, std::int64_t def) const {
  if (!Has(key)) return def;
  const std::string& s = At(key).value;
  std::int64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    Fail(key, "expected an integer");
  }
  return v;
}

bool Config::GetBool(const std::string& key, bool def) const {
  if (!Has(key)) return def;
  const std::string& s = At(key).value;
  if (s == "true" || s == "1" || s == "on" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "off" || s == "no") return false;
  Fail(key, "expected a boolean");
}

std::vector<double> Config::GetDoubleList(const std::string& key,
                                          const std::vector<double>& def) const {
  if (!Has(key)) return def;
  std::vector<double> out;
  std::string item;
  std::istringstream in(At(key).value);
  while (std::getline(in, item, ',')) {
    double v = 0.0;
    if (!ParseDouble(Trim(item), &v)) Fail(key, "expected a list of numbers");
    out.push_back(v);
  }
  if (out.empty()) Fail(key, "empty list");
  return out;
}

void Config::RequireKnownKeys(const std::vector<std::string>& known) const {
  for (const auto& [key, entry] : entries_) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError(entry.line > 0 ? source_ : "--set", entry.line, key,
                        "unknown key");
    }
  }
}

std::string Config::Canonical() const {
  std::string out;
  for (const auto& [key, entry] : entries_) {
    out += key + " = " + entry.value + "\n";
  }
  return out;
}

std::uint64_t Config::Hash() const { return Fnv1a64(Canonical()); }

double ParseSpeed(const std::string& text) {
  const std::string t = Trim(text);
  std::size_t unit_begin = t.find_first_not_of("0123456789.eE+-");
  if (unit_begin == std::string::npos) unit_begin = t.size();
  const std::string number = Trim(std::string_view(t).substr(0, unit_begin));
  const std::string unit = Trim(std::string_view(t).substr(unit_begin));
  double v = 0.0;
  if (!ParseDouble(number, &v)) throw ConfigError("speed", 0, text, "expected a number");
  double scale = 0.0;
  if (unit.empty() || unit == "mps" || unit == "m/s") {
    scale = 1.0;
  } else if (unit == "kmh" || unit == "km/h" || unit == "kph") {
    scale = 1.0 / 3.6;
  } else {
    throw ConfigError("speed", 0, text, "unknown unit '" + unit + "'");
  }
  if (!(v > 0.0)) throw ConfigError("speed", 0, text, "speed must be positive");
  return v * scale;
}

std::uint64_t Fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace mmw
