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

#include "muir/wikifier.h"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <utility>

#include "json.hpp"
#include "muir/errors.h"
#include "muir/jsonl.h"

namespace muir {
namespace {

bool IsAsciiLetter(char ch) {
  const auto uch = static_cast<unsigned char>(ch);
  return uch < 0x80 && std::isalpha(uch) != 0;
}

bool IsAsciiAlnum(char ch) {
  const auto uch = static_cast<unsigned char>(ch);
  return uch < 0x80 && std::isalnum(uch) != 0;
}

bool IsAsciiSpace(char ch) {
  const auto uch = static_cast<unsigned char>(ch);
  return uch < 0x80 && std::isspace(uch) != 0;
}

std::string ToLowerAscii(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char ch) {
    return ch < 0x80 ? static_cast<char>(std::tolower(ch)) : ch;
  });
  return out;
}

// Extraction triggers: the hint vocabulary minus "week"/"module". Those two
// words locate a resource ("see week 3") rather than name one; extracting
// them would link every schedule remark to nothing in particular. Longest
// first, so "slides" beats "slide" at the same position.
const std::vector<std::string> &TriggerKeywords() {
  static const auto *triggers = [] {
    auto *words = new std::vector<std::string>;
    for (const auto &keyword : HintKeywords()) {
      if (keyword != "week" && keyword != "module") words->push_back(keyword);
    }
    std::sort(words->begin(), words->end(),
              [](const std::string &a, const std::string &b) {
                return a.size() != b.size() ? a.size() > b.size() : a < b;
              });
    return words;
  }();
  return *triggers;
}

bool KeywordAt(const std::string &body, std::size_t pos,
               const std::string &keyword) {
  if (pos + keyword.size() > body.size()) return false;
  for (std::size_t i = 0; i < keyword.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(body[pos + i])) !=
        keyword[i]) {
      return false;
    }
  }
  return true;
}

std::size_t DigitRunLength(const std::string &body, std::size_t pos) {
  std::size_t n = 0;
  while (pos + n < body.size() &&
         std::isdigit(static_cast<unsigned char>(body[pos + n])) != 0) {
    ++n;
  }
  return n;
}

struct Designator {
  bool ok = false;
  std::size_t end = 0;
  std::vector<int> numeric;
};

// Matches <whitespace><number>[<sep><number>] starting right after a
// keyword, leftmost-longest: the two-component form is tried first and
// dropped when its tail runs into a letter. Digit runs are taken whole, so
// "1234" never yields a three-digit number.
Designator MatchDesignator(const std::string &body, std::size_t pos) {
  std::size_t j = pos;
  while (j < body.size() && IsAsciiSpace(body[j])) ++j;
  if (j == pos) return {};

  const std::size_t run1 = DigitRunLength(body, j);
  if (run1 == 0 || run1 > 3) return {};
  const int first = std::stoi(body.substr(j, run1));
  const std::size_t after1 = j + run1;

  if (after1 < body.size() && (body[after1] == '.' || body[after1] == '-')) {
    const std::size_t run2 = DigitRunLength(body, after1 + 1);
    if (run2 >= 1 && run2 <= 3) {
      const std::size_t after2 = after1 + 1 + run2;
      if (after2 == body.size() || !IsAsciiLetter(body[after2])) {
        return {true, after2,
                {first, std::stoi(body.substr(after1 + 1, run2))}};
      }
    }
  }
  if (after1 == body.size() || !IsAsciiLetter(body[after1])) {
    return {true, after1, {first}};
  }
  return {};
}

bool BodyHasKeyword(const std::string &body) {
  const std::string lower = ToLowerAscii(body);
  for (const auto &keyword : HintKeywords()) {
    for (std::size_t pos = lower.find(keyword); pos != std::string::npos;
         pos = lower.find(keyword, pos + 1)) {
      // Whole word up to digits: "week3" counts, "weekly" does not.
      const bool left_ok = pos == 0 || !IsAsciiLetter(lower[pos - 1]);
      const std::size_t after = pos + keyword.size();
      const bool right_ok =
          after == lower.size() || !IsAsciiLetter(lower[after]);
      if (left_ok && right_ok) return true;
    }
  }
  return false;
}

}  // namespace

std::vector<Mention> ExtractMentions(const ForumPost &post) {
  const std::string &body = post.body;
  std::vector<Mention> mentions;
  std::size_t i = 0;
  while (i < body.size()) {
    if (i > 0 && IsAsciiAlnum(body[i - 1])) {
      ++i;  // inside a word; a keyword cannot start here
      continue;
    }
    bool matched = false;
    for (const auto &keyword : TriggerKeywords()) {
      if (!KeywordAt(body, i, keyword)) continue;
      const Designator tail = MatchDesignator(body, i + keyword.size());
      if (!tail.ok) continue;
      Mention m;
      m.start = i;
      m.end = tail.end;
      m.surface = body.substr(i, tail.end - i);
      m.keyword = keyword;
      m.numeric = tail.numeric;
      mentions.push_back(std::move(m));
      i = tail.end;
      matched = true;
      break;
    }
    if (!matched) ++i;
  }
  return mentions;
}

ShortForm GenerateShortForm(const Mention &mention, const ForumPost &post,
                            const std::string &resolver_host) {
  ShortForm sf;
  sf.host = resolver_host;
  sf.course = post.context.course;
  sf.resource_type_hint = mention.keyword;
  if (mention.keyword == "week" || mention.keyword == "module") {
    // A place reference: the number names the week, and there is no block
    // to point at inside it.
    if (!mention.numeric.empty()) {
      sf.forum = "Week " + std::to_string(mention.numeric.front());
    }
    return sf;
  }
  if (post.context.forum) sf.forum = *post.context.forum;
  std::string block;
  for (int component : mention.numeric) {
    if (!block.empty()) block += '-';
    block += std::to_string(component);
  }
  if (!block.empty()) sf.block = block;
  return sf;
}

AnnotatedPost WikifyPost(const ForumPost &post, const Catalog *catalog,
                         const std::string &resolver_host, bool link_now) {
  assert(!link_now || catalog != nullptr);
  AnnotatedPost annotated;
  annotated.post_id = post.post_id;
  annotated.body = post.body;
  for (Mention &mention : ExtractMentions(post)) {
    LinkedMention linked;
    linked.short_form = GenerateShortForm(mention, post, resolver_host);
    linked.mention = std::move(mention);
    if (link_now && catalog != nullptr) {
      try {
        linked.resolution = Resolve(linked.short_form, post.context, *catalog);
      } catch (const Error &) {
        // Unresolvable mentions stay annotated but unlinked.
      }
    }
    annotated.mentions.push_back(std::move(linked));
  }
  return annotated;
}

PrevalenceEstimate EstimateKeywordPrevalence(
    std::span<const ForumPost> posts,
    std::span<const std::string> exclude_forums) {
  PrevalenceEstimate estimate;
  for (const ForumPost &post : posts) {
    if (post.context.forum) {
      const std::string forum = ToLowerAscii(*post.context.forum);
      bool excluded = false;
      for (const auto &name : exclude_forums) {
        if (forum == ToLowerAscii(name)) {
          excluded = true;
          break;
        }
      }
      if (excluded) continue;
    }
    ++estimate.total_posts;
    if (BodyHasKeyword(post.body)) ++estimate.matching_posts;
  }
  return estimate;
}

std::vector<ForumPost> ReadPostDump(std::istream &in) {
  std::vector<ForumPost> posts;
  ForEachJsonLine(in, [&posts](std::size_t line, const nlohmann::json &record) {
    ForumPost post;
    post.post_id = RequireString(record, "post_id", line);
    post.body = RequireString(record, "body", line);
    post.context.platform = RequireString(record, "platform", line);
    post.context.course = RequireString(record, "course", line);
    post.context.session = RequireNonNegativeInt(record, "session_ms", line);
    if (!record.contains("instructors") || !record["instructors"].is_array()) {
      throw MalformedRecord(line, "missing array field \"instructors\"");
    }
    for (const auto &name : record["instructors"]) {
      if (!name.is_string()) {
        throw MalformedRecord(line, "instructors must be strings");
      }
      post.context.instructors.push_back(name.get<std::string>());
    }
    post.context.forum = OptionalString(record, "forum", line);
    post.thread_id = OptionalString(record, "thread_id", line);
    posts.push_back(std::move(post));
  });
  return posts;
}

std::string AnnotatedPostToJsonLine(const AnnotatedPost &post) {
  nlohmann::ordered_json record;
  record["post_id"] = post.post_id;
  auto &mentions = record["mentions"] = nlohmann::ordered_json::array();
  for (const LinkedMention &linked : post.mentions) {
    nlohmann::ordered_json m;
    m["start"] = linked.mention.start;
    m["end"] = linked.mention.end;
    m["surface"] = linked.mention.surface;
    m["short_form"] = SerializeShortForm(linked.short_form);
    if (linked.resolution) {
      m["resolved_url"] = linked.resolution->platform_url;
      m["ambiguous"] = linked.resolution->ambiguous;
    } else {
      m["resolved_url"] = nullptr;
      m["ambiguous"] = nullptr;
    }
    mentions.push_back(std::move(m));
  }
  return record.dump();
}

void WriteAnnotatedPosts(std::ostream &out,
                         std::span<const AnnotatedPost> posts) {
  for (const AnnotatedPost &post : posts) {
    out << AnnotatedPostToJsonLine(post) << '\n';
  }
}

}  // namespace muir
