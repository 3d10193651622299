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

#include "muir/resolver.h"

#include <algorithm>
#include <cctype>
#include <set>
#include <utility>

#include "muir/errors.h"

namespace muir {
namespace {

bool EqualsIgnoreCase(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

// All content fields of the short form; the authority stays out, it names
// the resolver rather than the resource.
std::set<std::string> ShortFormTokens(const ShortForm &sf) {
  std::string text = sf.course;
  if (sf.forum) text += " " + *sf.forum;
  text += " " + sf.resource_type_hint;
  if (sf.block) text += " " + *sf.block;
  const std::vector<std::string> tokens = NormalizeTokens(text);
  return {tokens.begin(), tokens.end()};
}

bool IsContiguousRun(const std::vector<std::string> &haystack,
                     const std::vector<std::string> &needle) {
  if (needle.empty() || needle.size() > haystack.size()) return false;
  return std::search(haystack.begin(), haystack.end(), needle.begin(),
                     needle.end()) != haystack.end();
}

struct RankedCandidate {
  const LearningResource *resource = nullptr;
  Score score;
  bool forum_match = false;
};

bool ForumMatches(const LearningResource &resource, const ShortForm &sf,
                  const PostContext &ctx) {
  if (!resource.forum_week) return false;
  if (sf.forum && EqualsIgnoreCase(*resource.forum_week, *sf.forum)) {
    return true;
  }
  return ctx.forum && EqualsIgnoreCase(*resource.forum_week, *ctx.forum);
}

// Scored candidates in resolution order: score, then forum-week agreement,
// then slug, then platform URL.
std::vector<RankedCandidate> Rank(const ShortForm &sf, const PostContext &ctx,
                                  const Catalog &catalog) {
  const std::string &course = sf.course.empty() ? ctx.course : sf.course;
  std::vector<const LearningResource *> candidates;
  try {
    candidates = catalog.CourseContext(ctx.platform, course, ctx.session,
                                       ctx.instructors);
    if (candidates.empty() && ctx.session) {
      // Learners in one session routinely reference material that only the
      // other sessions of the course carry; widen once.
      candidates = catalog.CourseContext(ctx.platform, course, std::nullopt,
                                         ctx.instructors);
    }
  } catch (const NotFound &) {
    return {};
  }

  std::vector<RankedCandidate> ranked;
  ranked.reserve(candidates.size());
  for (const LearningResource *resource : candidates) {
    ranked.push_back({resource, ScoreCandidate(*resource, sf),
                      ForumMatches(*resource, sf, ctx)});
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const RankedCandidate &a, const RankedCandidate &b) {
              if (a.score != b.score) return a.score > b.score;
              if (a.forum_match != b.forum_match) return a.forum_match;
              if (a.resource->slug != b.resource->slug) {
                return a.resource->slug < b.resource->slug;
              }
              return a.resource->platform_url < b.resource->platform_url;
            });
  return ranked;
}

}  // namespace

Score ScoreCandidate(const LearningResource &resource, const ShortForm &sf) {
  const std::set<std::string> sf_tokens = ShortFormTokens(sf);
  std::int64_t q = static_cast<std::int64_t>(sf_tokens.size());

  const int type_match =
      HintToType(sf.resource_type_hint) == resource.resource_type ? 1 : 0;

  // Block agreement in halves: 2 for a contiguous run in the slug tokens,
  // 1 for all tokens present out of order, 0 otherwise.
  int block_halves = 0;
  if (sf.block) {
    const std::vector<std::string> block_tokens = NormalizeTokens(*sf.block);
    const std::vector<std::string> slug_tokens =
        NormalizeTokens(resource.slug);
    if (!block_tokens.empty()) {
      if (IsContiguousRun(slug_tokens, block_tokens)) {
        block_halves = 2;
      } else {
        const std::set<std::string> slug_set(slug_tokens.begin(),
                                             slug_tokens.end());
        bool all_present = true;
        for (const auto &token : block_tokens) {
          if (slug_set.count(token) == 0) {
            all_present = false;
            break;
          }
        }
        if (all_present) block_halves = 1;
      }
    }
  }

  std::int64_t matched = 0;
  {
    std::string document = resource.slug;
    if (resource.title) document += " " + *resource.title;
    const std::vector<std::string> doc_tokens = NormalizeTokens(document);
    const std::set<std::string> doc_set(doc_tokens.begin(), doc_tokens.end());
    for (const auto &token : sf_tokens) {
      if (doc_set.count(token) > 0) ++matched;
    }
  }
  if (q == 0) {
    q = 1;
    matched = 0;
  }

  // 0.5*t + 0.4*b + 0.1*(matched/q) over the common denominator 10q.
  return Score{5 * type_match * q + 2 * block_halves * q + matched, 10 * q};
}

ResolutionResult Resolve(const ShortForm &sf, const PostContext &ctx,
                         const Catalog &catalog) {
  const std::vector<RankedCandidate> ranked = Rank(sf, ctx, catalog);
  if (ranked.empty()) {
    const std::string &course = sf.course.empty() ? ctx.course : sf.course;
    throw NoCandidates("no resources in context " + ctx.platform + "/" +
                       course);
  }
  const RankedCandidate &best = ranked.front();
  if (best.score < kPlausibilityThreshold) {
    throw NoPlausibleMatch("best candidate " + best.resource->slug +
                           " scored below threshold");
  }
  ResolutionResult result;
  result.canonical = catalog.CanonicalFor(*best.resource);
  result.platform_url = best.resource->platform_url;
  result.score = best.score;
  result.ambiguous = ranked.size() > 1 && ranked[1].score == best.score;
  return result;
}

std::string ResolveToUrl(const ShortForm &sf, const PostContext &ctx,
                         const Catalog &catalog) {
  return catalog.LookupCanonical(Resolve(sf, ctx, catalog).canonical);
}

std::vector<ScoredCandidate> Search(const ShortForm &sf,
                                    const PostContext &ctx,
                                    const Catalog &catalog, std::size_t k) {
  const std::vector<RankedCandidate> ranked = Rank(sf, ctx, catalog);
  std::vector<ScoredCandidate> out;
  out.reserve(std::min(k, ranked.size()));
  for (const RankedCandidate &candidate : ranked) {
    if (out.size() == k) break;
    out.push_back({catalog.CanonicalFor(*candidate.resource),
                   candidate.resource->platform_url, candidate.score});
  }
  return out;
}

ShortForm ShortFormFromQuery(std::string_view query, std::string host,
                             std::string course) {
  ShortForm sf;
  sf.host = std::move(host);
  sf.course = std::move(course);

  const std::vector<std::string> tokens = NormalizeTokens(query);
  auto numeric = [](const std::string &token) {
    return std::all_of(token.begin(), token.end(), [](unsigned char ch) {
      return std::isdigit(ch) != 0;
    });
  };

  std::string block;
  for (const auto &token : tokens) {
    if (!numeric(token)) continue;
    if (!block.empty()) block += '-';
    block += token;
  }
  if (!block.empty()) sf.block = block;

  for (const auto &token : tokens) {
    if (IsTypeKeyword(token)) {
      sf.resource_type_hint = token;
      break;
    }
  }
  if (sf.resource_type_hint.empty()) {
    for (const auto &token : tokens) {
      if (!numeric(token)) {
        sf.resource_type_hint = token;
        break;
      }
    }
  }
  // A query of nothing but numbers still needs a hint word; "resource"
  // deliberately maps outside the type lexicon.
  if (sf.resource_type_hint.empty()) sf.resource_type_hint = "resource";
  return sf;
}

}  // namespace muir
