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
// Turns forum posts into annotated posts: keyword+number mention spans,
// a short form per mention, and (optionally) a resolution per short form.

#ifndef MUIR_WIKIFIER_H_
#define MUIR_WIKIFIER_H_

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "muir/catalog.h"
#include "muir/identifier.h"
#include "muir/resolver.h"

namespace muir {

struct ForumPost {
  std::string post_id;
  std::string body;  // UTF-8, non-empty
  PostContext context;
  std::optional<std::string> thread_id;

  bool operator==(const ForumPost &) const = default;
};

// One resource reference inside a post body.
struct Mention {
  std::size_t start = 0;  // byte offsets into body, half-open
  std::size_t end = 0;
  std::string surface;  // body.substr(start, end - start)
  std::string keyword;  // matched lexicon keyword, lowercased
  std::vector<int> numeric;  // offset designator components, e.g. [2, 5]

  bool operator==(const Mention &) const = default;
};

struct LinkedMention {
  Mention mention;
  ShortForm short_form;
  std::optional<ResolutionResult> resolution;  // absent when unlinked
};

struct AnnotatedPost {
  std::string post_id;
  std::string body;
  std::vector<LinkedMention> mentions;  // in document order
};

struct PrevalenceEstimate {
  std::int64_t matching_posts = 0;
  std::int64_t total_posts = 0;

  double fraction() const {
    return total_posts == 0
               ? 0.0
               : static_cast<double>(matching_posts) / total_posts;
  }
};

// Scans the body, case-insensitively, for
//   <keyword> <whitespace> <number> [<sep> <number>]
// with sep "." or "-" and numbers of 1 to 3 digits; matching is
// leftmost-longest and matches never overlap. The trigger vocabulary is the
// type-hint lexicon plus "lesson"; the structural words "week" and "module"
// locate resources rather than name one, so bare week references are left
// alone. Returns mentions in document order; no match means an empty list.
std::vector<Mention> ExtractMentions(const ForumPost &post);

// Maps a mention onto a short form: course and forum from the post context,
// the keyword as the type hint, the numeric components joined by "-" as the
// block. A "week"/"module" mention instead pins the forum segment to
// "Week N" and carries no block.
ShortForm GenerateShortForm(const Mention &mention, const ForumPost &post,
                            const std::string &resolver_host);

// Extraction plus short-form generation; with link_now also resolves each
// short form against `catalog` (required non-null then). A mention that
// fails to resolve is kept, unresolved; the post itself never fails.
AnnotatedPost WikifyPost(const ForumPost &post, const Catalog *catalog,
                         const std::string &resolver_host, bool link_now);

// Share of posts whose body contains at least one lexicon keyword as a
// whole word (neighbors may be digits but not letters, so "week3" counts).
// Posts in any of `exclude_forums` (case-insensitive) leave both counts.
PrevalenceEstimate EstimateKeywordPrevalence(
    std::span<const ForumPost> posts,
    std::span<const std::string> exclude_forums = {});

// JSON Lines post dump, one object per line:
//   {"post_id": str, "body": str, "platform": str, "course": str,
//    "session_ms": int, "instructors": [str], "forum": str|null,
//    "thread_id": str|null}
// Throws MalformedRecord with the offending line number.
std::vector<ForumPost> ReadPostDump(std::istream &in);

// One annotation line:
//   {"post_id": str, "mentions": [{"start": int, "end": int,
//    "surface": str, "short_form": str, "resolved_url": str|null,
//    "ambiguous": bool|null}]}
std::string AnnotatedPostToJsonLine(const AnnotatedPost &post);

void WriteAnnotatedPosts(std::ostream &out,
                         std::span<const AnnotatedPost> posts);

}  // namespace muir

#endif  // MUIR_WIKIFIER_H_
