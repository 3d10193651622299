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
// Best-effort resolution of short forms against a catalog: candidates come
// from the origin post's course context, get scored on type agreement, block
// identity and token overlap, and the top candidate's canonical form wins.

#ifndef MUIR_RESOLVER_H_
#define MUIR_RESOLVER_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "muir/catalog.h"
#include "muir/identifier.h"

namespace muir {

// Origin-post data used to narrow the candidate set before scoring.
struct PostContext {
  std::string platform;
  std::string course;
  std::optional<std::int64_t> session;  // epoch ms; absent widens to all
  std::vector<std::string> instructors;
  std::optional<std::string> forum;  // subforum name, typically "Week N"

  bool operator==(const PostContext &) const = default;
};

// Exact rational in [0, 1]. Scores stay fractions end to end so that equal
// scores compare equal; tie detection must not hinge on float rounding.
struct Score {
  std::int64_t num = 0;
  std::int64_t den = 1;  // always positive

  double value() const { return static_cast<double>(num) / den; }

  friend bool operator==(const Score &a, const Score &b) {
    return a.num * b.den == b.num * a.den;
  }
  friend std::strong_ordering operator<=>(const Score &a, const Score &b) {
    return a.num * b.den <=> b.num * a.den;
  }
};

// Below this score the best candidate is rejected as implausible.
inline constexpr Score kPlausibilityThreshold{1, 2};

struct ResolutionResult {
  CanonicalForm canonical;
  std::string platform_url;
  Score score;
  bool ambiguous = false;  // >= 2 candidates tied at the top pre-tie-break
};

struct ScoredCandidate {
  CanonicalForm canonical;
  std::string platform_url;
  Score score;

  bool operator==(const ScoredCandidate &) const = default;
};

// 0.5 * type + 0.4 * block + 0.1 * overlap, where
//   type    = 1 iff the hint keyword maps to the resource's type;
//   block   = 1 for the block token sequence contiguous in the slug tokens,
//             0.5 when all block tokens occur non-contiguously, else 0;
//   overlap = matched fraction of the short form's token set against the
//             resource's slug + title tokens (0 when the form has none).
Score ScoreCandidate(const LearningResource &resource, const ShortForm &sf);

// Picks the best candidate inside course_context(ctx, sf.course or
// ctx.course). An exact-session context that matches nothing is retried once
// across all sessions. Ties at the top score are broken by forum-week
// agreement, then slug, then platform URL, and surface as `ambiguous`.
// Throws NoCandidates on an empty context and NoPlausibleMatch when the
// best score falls below kPlausibilityThreshold.
ResolutionResult Resolve(const ShortForm &sf, const PostContext &ctx,
                         const Catalog &catalog);

// Resolve composed with the canonical -> URL lookup.
std::string ResolveToUrl(const ShortForm &sf, const PostContext &ctx,
                         const Catalog &catalog);

// The k best candidates in resolution order, unthresholded; an empty or
// unknown context yields an empty list rather than an error.
std::vector<ScoredCandidate> Search(const ShortForm &sf,
                                    const PostContext &ctx,
                                    const Catalog &catalog,
                                    std::size_t k = 10);

// Builds the search key for a free-text query: the first type keyword (or,
// failing that, the first word) becomes the hint, numeric tokens join into
// the block.
ShortForm ShortFormFromQuery(std::string_view query, std::string host,
                             std::string course);

}  // namespace muir

#endif  // MUIR_RESOLVER_H_
