// Copyright 2026 The MUIR Authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>
#include <string>

#include "json.hpp"
#include "muir/demo.h"
#include "muir/identifier.h"

namespace muir {
namespace {

TEST_CASE("default demo run prints all four forms and succeeds") {
  std::ostringstream out;
  int code = RunDemo(out, /*as_json=*/false);
  CHECK(code == 0);
  std::string text = out.str();
  CHECK(text.find("I    " + DemoFormShort() + "\n") != std::string::npos);
  CHECK(text.find("II   " + DemoFormCanonical() + "\n") != std::string::npos);
  CHECK(text.find("III  www.example.org/id/" + DemoOpaqueValue() + "\n") !=
        std::string::npos);
  CHECK(text.find("IV   " + DemoFormUrl() + "\n") != std::string::npos);
  CHECK(text.find("score:     56/60\n") != std::string::npos);
  CHECK(text.find("ambiguous: no\n") != std::string::npos);
  CHECK(text.rfind("chain: ok\n") == text.size() - 10);

  std::ostringstream again;
  CHECK(RunDemo(again, false) == 0);
  CHECK(again.str() == text);
}

TEST_CASE("the frozen opaque value really is the mint of form II") {
  OpaqueId id = MintOpaque(ParseCanonical(DemoFormCanonical()));
  CHECK(id.value == DemoOpaqueValue());
}

TEST_CASE("json mode emits one annotated-post object") {
  std::ostringstream out;
  int code = RunDemo(out, /*as_json=*/true);
  CHECK(code == 0);
  std::string text = out.str();
  REQUIRE(!text.empty());
  CHECK(text.back() == '\n');
  CHECK(text.find('\n') == text.size() - 1);  // a single line

  nlohmann::json doc = nlohmann::json::parse(text);
  REQUIRE(doc.is_object());
  CHECK(doc.size() == 2);
  CHECK(doc["post_id"] == "demo-post");
  REQUIRE(doc["mentions"].is_array());
  REQUIRE(doc["mentions"].size() == 1);
  const nlohmann::json &m = doc["mentions"][0];
  CHECK(m.size() == 6);
  // "A quick question about " is 23 characters; the mention follows it.
  CHECK(m["start"] == 23);
  CHECK(m["end"] == 34);
  CHECK(m["surface"] == "lecture 2.5");
  CHECK(m["short_form"] == DemoFormShort());
  CHECK(m["resolved_url"] == DemoFormUrl());
  CHECK(m["ambiguous"] == false);
}

TEST_CASE("a corrupted fixture slug fails verification") {
  std::string jsonl = DemoFixtureJsonl();
  std::size_t pos = jsonl.find("red-flags");
  REQUIRE(pos != std::string::npos);
  jsonl.replace(pos, 9, "red-flagz");  // slug field only, URL untouched
  std::istringstream fixture(jsonl);
  std::ostringstream out;
  int code = RunDemo(out, false, fixture);
  CHECK(code == 1);
  CHECK(out.str().find("chain: MISMATCH canonical form diverged") !=
        std::string::npos);
}

TEST_CASE("a corrupted platform URL fails verification") {
  std::string jsonl = DemoFixtureJsonl();
  std::size_t pos = jsonl.find("1UzkX");
  REQUIRE(pos != std::string::npos);
  jsonl.replace(pos, 5, "1Uzk0");
  std::istringstream fixture(jsonl);
  std::ostringstream out;
  CHECK(RunDemo(out, false, fixture) == 1);
  CHECK(out.str().find("chain: MISMATCH platform URL diverged") !=
        std::string::npos);
}

TEST_CASE("an unreadable fixture is an input error") {
  std::istringstream fixture("this is not json\n");
  std::ostringstream out;
  CHECK(RunDemo(out, false, fixture) == 2);
  CHECK(out.str().rfind("error:", 0) == 0);
}

TEST_CASE("an empty fixture leaves the mention unresolved") {
  std::istringstream fixture("");
  std::ostringstream out;
  CHECK(RunDemo(out, false, fixture) == 1);
  CHECK(out.str().find("chain: MISMATCH mention did not resolve") !=
        std::string::npos);
}

}  // namespace
}  // namespace muir
