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


#include <string>

#include "doctest.h"
#include "mmw/config.hpp"

using namespace mmw;

TEST_CASE("parse and typed access") {
  const Config c = Config::Parse(
      "# comment\n"
      "n_sbs = 40   # trailing\n"
      "\n"
      "p_th=0.1\n"
      "name = focal run\n"
      "sbs_powers_dbm = 20, 27 ,30\n"
      "caching = off\n",
      "a.cfg");
  CHECK(c.GetInt("n_sbs", 0) == 40);
  CHECK(c.GetDouble("p_th", 0.0) == 0.1);
  CHECK(c.GetString("name", "") == "focal run");
  CHECK(c.GetDoubleList("sbs_powers_dbm", {}) == std::vector<double>{20, 27, 30});
  CHECK_FALSE(c.GetBool("caching", true));
  CHECK(c.GetDouble("missing", 2.5) == 2.5);
  CHECK(c.source() == "a.cfg");
}

TEST_CASE("errors carry source, line and key") {
  try {
    Config::Parse("a = 1\nquota = ten\n", "typed.cfg").GetInt("quota", 0);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 2);
    CHECK(e.key() == "quota");
    CHECK(std::string(e.what()).rfind("typed.cfg:2: 'quota':", 0) == 0);
  }
  CHECK_THROWS_AS(Config::Parse("a = 1\nno equals here\n"), ConfigError);
  CHECK_THROWS_AS(Config::Parse("bad key = 1\n"), ConfigError);
  CHECK_THROWS_AS(Config::Parse("k =\n"), ConfigError);
  CHECK_THROWS_AS(Config::Parse("n = 1.5").GetInt("n", 0), ConfigError);
  CHECK_THROWS_AS(Config::Parse("n = 3x").GetDouble("n", 0), ConfigError);
  CHECK_THROWS_AS(Config::Parse("b = maybe").GetBool("b", false), ConfigError);
  CHECK_THROWS_AS(Config::Parse("l = 1,,2").GetDoubleList("l", {}), ConfigError);
  CHECK_THROWS_AS(Config::Load("/nonexistent/x.cfg"), ConfigError);
}

TEST_CASE("unknown keys") {
  Config c = Config::Parse("alpha = 1\nbeta = 2\n", "k.cfg");
  CHECK_NOTHROW(c.RequireKnownKeys({"alpha", "beta"}));
  try {
    c.RequireKnownKeys({"alpha"});
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "beta");
    CHECK(e.line() == 2);
  }
}

TEST_CASE("overrides and canonical hash") {
  Config a = Config::Parse("x = 1\ny = 2\n");
  Config b = Config::Parse("y = 2\n# reordered\nx = 1\n");
  CHECK(a.Canonical() == b.Canonical());
  CHECK(a.Hash() == b.Hash());
  b.ApplyOverride("x=3");
  CHECK(b.GetInt("x", 0) == 3);
  CHECK(a.Hash() != b.Hash());
  CHECK_THROWS_AS(b.ApplyOverride("novalue"), ConfigError);
  CHECK(a.Canonical() == "x = 1\ny = 2\n");
}

TEST_CASE("fnv-1a reference values") {
  CHECK(Fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(Fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(Fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("speed parsing") {
  CHECK(ParseSpeed("12") == 12.0);
  CHECK(ParseSpeed("12mps") == 12.0);
  CHECK(ParseSpeed("12m/s") == 12.0);
  CHECK(ParseSpeed("60kmh") == doctest::Approx(16.6666666667));
  CHECK(ParseSpeed("36km/h") == doctest::Approx(10.0));
  CHECK(ParseSpeed("36kph") == doctest::Approx(10.0));
  CHECK_THROWS_AS(ParseSpeed("fast"), ConfigError);
  CHECK_THROWS_AS(ParseSpeed("-3"), ConfigError);
  CHECK_THROWS_AS(ParseSpeed("3mph"), ConfigError);
}
