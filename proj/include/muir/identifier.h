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
// The threefold MUIR identifier scheme.
//
// A learning resource is addressed three ways:
//   short form  s1/s2/s3/s4/s5  - partial, human-guessable, resolved by search
//   canonical   f1/.../f7       - fully specified, one-to-one with a resource
//   opaque      16 chars [a-z0-9] - permanent serial id minted from the canonical
//
// On the wire every segment is percent-encoded UTF-8 with space -> %20,
// & -> %26, / -> %2F and % -> %25 inside values; everything else passes
// through literally.

#ifndef MUIR_IDENTIFIER_H_
#define MUIR_IDENTIFIER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace muir {

// The seven canonical resource types. Declaration order is the sort order
// used for deterministic listings.
enum class ResourceType {
  kVideos,
  kSlides,
  kTranscripts,
  kAssessments,
  kExams,
  kReadings,
  kAdditionalResources,
};

inline constexpr int kNumResourceTypes = 7;

// Wire name of a resource type, e.g. "Videos".
std::string_view ToString(ResourceType type);

// Inverse of ToString. Throws MalformedCanonical on any other input.
ResourceType ResourceTypeFromString(std::string_view name);

// Short form identifier: host/course[/forum]/type-hint[/block].
// `course` and `resource_type_hint` are always present.
struct ShortForm {
  std::string host;                  // s1, resolver authority
  std::string course;                // s2
  std::optional<std::string> forum;  // s3, usually the week label
  std::string resource_type_hint;    // s4, e.g. "lecture", "quiz"
  std::optional<std::string> block;  // s5, e.g. "2-5"

  bool operator==(const ShortForm &) const = default;
};

// Canonical identifier: host/platform/course/session/instructors/type/slug.
// All seven fields are required and non-empty. Instructor names are joined
// by '&' before encoding, so a name must not itself contain '&'.
struct CanonicalForm {
  std::string host;                      // f1
  std::string platform;                  // f2, e.g. "Coursera"
  std::string course;                    // f3
  std::int64_t session = 0;              // f4, epoch milliseconds UTC, >= 0
  std::vector<std::string> instructors;  // f5, ordered
  ResourceType resource_type = ResourceType::kVideos;  // f6
  std::string slug;                      // f7

  bool operator==(const CanonicalForm &) const = default;
};

// Succinct permanent identifier; 16 characters over [a-z0-9].
struct OpaqueId {
  std::string value;

  bool operator==(const OpaqueId &) const = default;
  bool operator<(const OpaqueId &other) const { return value < other.value; }
};

// True iff `value` is a well-formed opaque id (exactly 16 of [a-z0-9]).
bool IsOpaqueIdText(std::string_view value);

// Percent-encodes one path segment (space, &, /, % are escaped).
std::string PercentEncodeSegment(std::string_view value);

// Decodes %XX escapes. Throws MalformedShortForm on a truncated or
// non-hexadecimal escape.
std::string PercentDecodeSegment(std::string_view value);

// Parses a 3..5 segment short form path. Segments bind positionally to
// s1..s5. A four-segment form is ambiguous between dropping the forum and
// dropping the block; the forum is taken as absent exactly when the third
// segment is a known type-hint keyword. Throws MalformedShortForm.
ShortForm ParseShortForm(std::string_view text);

// Joins the present fields in order s1..s5, percent-encoding each segment.
std::string SerializeShortForm(const ShortForm &sf);

// Parses a 7-segment canonical path. Throws MalformedCanonical on wrong
// arity, empty fields, a non-numeric or negative session, an unknown
// resource type, or an empty instructor name.
CanonicalForm ParseCanonical(std::string_view text);

// Inverse of ParseCanonical.
std::string SerializeCanonical(const CanonicalForm &c);

// Case-folds to lowercase and splits on every non-alphanumeric byte.
// Output tokens match [a-z0-9]+; the function is idempotent on its own
// output rejoined by single spaces.
std::vector<std::string> NormalizeTokens(std::string_view text);

// Mints the opaque id for a canonical form: the first 16 characters of the
// base-36 rendering (25 digits, zero-padded) of a 128-bit digest of the
// serialized form. Pure and deterministic, so rebuilt catalogs keep their
// ids without a mint ledger.
OpaqueId MintOpaque(const CanonicalForm &c);

// Maps a type-hint keyword ("lecture", "quiz", ...) to a resource type.
// Matching is case-insensitive; anything outside the vocabulary falls back
// to AdditionalResources.
ResourceType HintToType(std::string_view hint);

// The full type-hint vocabulary, lowercased: the type keywords plus the
// structural words "week", "module" and "lesson".
const std::vector<std::string> &HintKeywords();

// True iff `token` (any case) is in HintKeywords().
bool IsHintKeyword(std::string_view token);

// True iff `token` (any case) names a specific resource type, i.e. is a
// type keyword rather than one of the structural words.
bool IsTypeKeyword(std::string_view token);

}  // namespace muir

#endif  // MUIR_IDENTIFIER_H_
