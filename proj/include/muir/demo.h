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
//
// Self-checking walkthrough of the identifier chain over a bundled
// one-resource fixture: a forum-post mention becomes a short form, resolves
// to the canonical form, mints the opaque id, and redirects to the platform
// URL. The run succeeds only when every produced form matches the expected
// value frozen here, so the demo doubles as an end-to-end smoke check.

#ifndef MUIR_DEMO_H_
#define MUIR_DEMO_H_

#include <istream>
#include <ostream>
#include <string>

namespace muir {

// Bundled resource dump (one JSON line) and the forms the chain must yield.
const std::string &DemoFixtureJsonl();
const std::string &DemoHost();
const std::string &DemoFormShort();      // form I
const std::string &DemoFormCanonical();  // form II
const std::string &DemoOpaqueValue();    // 16-char id inside form III
const std::string &DemoFormUrl();        // form IV

// Runs the walkthrough over the bundled fixture. `as_json` prints the trace
// as one annotated-post JSON object instead of labeled lines. Returns 0 when
// the chain reproduces every expected form, 1 on any mismatch, 2 when the
// fixture cannot be ingested.
int RunDemo(std::ostream &out, bool as_json);

// Same walkthrough over a caller-supplied fixture; the expected forms stay
// the bundled ones, so a diverging fixture makes the run exit 1.
int RunDemo(std::ostream &out, bool as_json, std::istream &fixture);

}  // namespace muir

#endif  // MUIR_DEMO_H_
