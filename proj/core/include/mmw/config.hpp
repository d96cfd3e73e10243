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

#ifndef MMW_CONFIG_HPP_
#define MMW_CONFIG_HPP_

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mmw {

// Raised for malformed input; `line` is 0 when the value came from an
// override rather than a file.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, int line, const std::string& key,
              const std::string& message);

  int line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  int line_;
  std::string key_;
};

// Flat `key = value` store. '#' starts a comment; blank lines are skipped.
// Later assignments and overrides replace earlier ones.
class Config {
 public:
  static Config Parse(std::string_view text,
                      const std::string& source = "<string>");
  static Config Load(const std::string& path);

  void Set(const std::string& key, const std::string& value, int line = 0);
  // "key=value" as given on the command line.
  void ApplyOverride(const std::string& assignment);

  bool Has(const std::string& key) const { return entries_.count(key) > 0; }
  std::string GetString(const std::string& key, const std::string& def) const;
  double GetDouble(const std::string& key, double def) const;
  std::int64_t GetInt(const std::string& key, std::int64_t def) const;
  bool GetBool(const std::string& key, bool def) const;
  std::vector<double> GetDoubleList(const std::string& key,
                                    const std::vector<double>& def) const;

  // Throws ConfigError naming the first key not in `known`.
  void RequireKnownKeys(const std::vector<std::string>& known) const;

  // Sorted "key = value" lines; the basis of Hash().
  std::string Canonical() const;
  // 64-bit FNV-1a of Canonical().
  std::uint64_t Hash() const;

  const std::string& source() const { return source_; }

 private:
  struct Entry {
    std::string value;
    int line = 0;
  };
  const Entry& At(const std::string& key) const;
  [[noreturn]] void Fail(const std::string& key, const std::string& msg) const;

  std::string source_ = "<string>";
  std::map<std::string, Entry> entries_;
};

std::uint64_t Fnv1a64(std::string_view bytes);

// "12", "12mps" and "12m/s" are metres per second; "60kmh" and "60km/h" are
// converted. Throws ConfigError otherwise.
double ParseSpeed(const std::string& text);

}  // namespace mmw

#endif  // MMW_CONFIG_HPP_
