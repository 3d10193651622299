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

#include "muir/eval.h"

#include <algorithm>
#include <cstddef>
#include <set>
#include <unordered_map>
#include <utility>

#include "json.hpp"
#include "muir/errors.h"
#include "muir/identifier.h"
#include "muir/resolver.h"

namespace muir {
namespace {

using Span = std::pair<std::int64_t, std::int64_t>;

std::unordered_map<std::string, const ForumPost *> IndexPosts(
    std::span<const ForumPost> posts) {
  std::unordered_map<std::string, const ForumPost *> index;
  for (const ForumPost &post : posts) index.emplace(post.post_id, &post);
  return index;
}

const ForumPost &RequirePost(
    const std::unordered_map<std::string, const ForumPost *> &index,
    const std::string &post_id) {
  auto it = index.find(post_id);
  if (it == index.end()) {
    throw MissingPost("gold annotation names unknown post '" + post_id + "'");
  }
  return *it->second;
}

std::vector<Span> ExtractedSpans(const ForumPost &post) {
  std::vector<Span> spans;
  for (const Mention &m : ExtractMentions(post)) {
    spans.emplace_back(static_cast<std::int64_t>(m.start),
                       static_cast<std::int64_t>(m.end));
  }
  return spans;
}

CoverageRow ScoreAgainstGold(
    std::span<const ForumPost> posts,
    const std::unordered_map<std::string, std::vector<Span>> &extracted,
    const std::map<std::string, std::set<Span>> &gold_spans,
    std::string label) {
  CoverageRow row;
  row.label = std::move(label);
  row.posts = static_cast<std::int64_t>(posts.size());
  for (const ForumPost &post : posts) {
    auto ext_it = extracted.find(post.post_id);
    const std::vector<Span> &predicted = ext_it->second;
    row.extracted += static_cast<std::int64_t>(predicted.size());

    auto gold_it = gold_spans.find(post.post_id);
    if (gold_it == gold_spans.end() || gold_it->second.empty()) continue;
    const std::set<Span> &gold = gold_it->second;
    row.posts_with_mentions += 1;
    row.gold_mentions += static_cast<std::int64_t>(gold.size());
    for (const Span &span : predicted) {
      if (gold.count(span) > 0) row.extracted_correct += 1;
    }
    for (const Span &span : gold) {
      if (std::find(predicted.begin(), predicted.end(), span) !=
          predicted.end()) {
        row.gold_matched += 1;
      }
    }
  }
  return row;
}

}  // namespace

std::string FormatPercentHalfUp(std::int64_t num, std::int64_t den) {
  if (den == 0) return "0.0";
  // Tenths of a percent, half-up: floor((num / den * 1000) + 1/2).
  const std::int64_t tenths = (num * 2000 + den) / (2 * den);
  return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10);
}

GoldMentions ParseGoldMentions(std::istream &in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error &err) {
    throw MalformedRecord(1, std::string("gold mentions: ") + err.what());
  }
  if (!doc.is_object()) {
    throw MalformedRecord(1, "gold mentions: top level must be an object");
  }
  GoldMentions gold;
  for (const auto &[annotator, by_post] : doc.items()) {
    if (!by_post.is_object()) {
      throw MalformedRecord(1, "gold mentions: annotator '" + annotator +
                                   "' must map post ids to span lists");
    }
    auto &posts = gold[annotator];
    for (const auto &[post_id, spans] : by_post.items()) {
      if (!spans.is_array()) {
        throw MalformedRecord(1, "gold mentions: spans for post '" + post_id +
                                     "' must be an array");
      }
      auto &out = posts[post_id];
      for (const auto &span : spans) {
        if (!span.is_array() || span.size() != 2 ||
            !span[0].is_number_integer() || !span[1].is_number_integer()) {
          throw MalformedRecord(1, "gold mentions: span for post '" + post_id +
                                       "' must be [start, end]");
        }
        out.emplace_back(span[0].get<std::int64_t>(),
                         span[1].get<std::int64_t>());
      }
    }
  }
  return gold;
}

GoldLinks ParseGoldLinks(std::istream &in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error &err) {
    throw MalformedRecord(1, std::string("gold links: ") + err.what());
  }
  if (!doc.is_object()) {
    throw MalformedRecord(1, "gold links: top level must be an object");
  }
  GoldLinks gold;
  for (const auto &[post_id, links] : doc.items()) {
    if (!links.is_array()) {
      throw MalformedRecord(
          1, "gold links: entry for post '" + post_id + "' must be an array");
    }
    auto &out = gold[post_id];
    for (const auto &link : links) {
      if (!link.is_object() || !link.contains("start") ||
          !link.contains("end") || !link.contains("url") ||
          !link["start"].is_number_integer() ||
          !link["end"].is_number_integer() || !link["url"].is_string()) {
        throw MalformedRecord(1, "gold links: entry for post '" + post_id +
                                     "' must have start, end, url");
      }
      out.push_back(GoldLink{link["start"].get<std::int64_t>(),
                             link["end"].get<std::int64_t>(),
                             link["url"].get<std::string>()});
    }
  }
  return gold;
}

std::vector<CoverageRow> EvalCoverage(std::span<const ForumPost> posts,
                                      const GoldMentions &gold) {
  auto index = IndexPosts(posts);
  for (const auto &[annotator, by_post] : gold) {
    for (const auto &[post_id, spans] : by_post) RequirePost(index, post_id);
  }

  std::unordered_map<std::string, std::vector<Span>> extracted;
  for (const ForumPost &post : posts) {
    extracted.emplace(post.post_id, ExtractedSpans(post));
  }

  std::vector<CoverageRow> rows;
  std::map<std::string, std::set<Span>> merged;
  for (const auto &[annotator, by_post] : gold) {
    std::map<std::string, std::set<Span>> spans;
    for (const auto &[post_id, list] : by_post) {
      spans[post_id].insert(list.begin(), list.end());
      merged[post_id].insert(list.begin(), list.end());
    }
    rows.push_back(ScoreAgainstGold(posts, extracted, spans, annotator));
  }
  rows.push_back(ScoreAgainstGold(posts, extracted, merged, "union"));
  return rows;
}

std::vector<ResolutionRow> EvalResolution(std::span<const ForumPost> posts,
                                          const Catalog &catalog,
                                          const GoldLinks &gold,
                                          const std::string &resolver_host) {
  auto index = IndexPosts(posts);
  std::int64_t instances[kNumResourceTypes] = {};
  std::int64_t correct[kNumResourceTypes] = {};

  for (const auto &[post_id, links] : gold) {
    const ForumPost &post = RequirePost(index, post_id);
    for (const GoldLink &link : links) {
      // Run the pipeline on the annotated surface alone so resolution is
      // judged on gold mentions, not on whatever extraction found.
      ForumPost surface_post = post;
      if (link.start >= 0 && link.end > link.start &&
          link.end <= static_cast<std::int64_t>(post.body.size())) {
        surface_post.body = post.body.substr(
            static_cast<std::size_t>(link.start),
            static_cast<std::size_t>(link.end - link.start));
      } else {
        surface_post.body.clear();
      }

      ResourceType row_type = ResourceType::kAdditionalResources;
      bool hit = false;
      std::vector<Mention> mentions = ExtractMentions(surface_post);
      if (mentions.size() == 1) {
        const Mention &m = mentions.front();
        row_type = HintToType(m.keyword);
        ShortForm sf = GenerateShortForm(m, surface_post, resolver_host);
        try {
          ResolutionResult res = Resolve(sf, surface_post.context, catalog);
          row_type = res.canonical.resource_type;
          hit = res.platform_url == link.url;
        } catch (const Error &) {
          // Unresolvable gold mentions stay under the hint's type.
        }
      }
      instances[static_cast<int>(row_type)] += 1;
      if (hit) correct[static_cast<int>(row_type)] += 1;
    }
  }

  std::vector<ResolutionRow> rows;
  ResolutionRow total{"Total", 0, 0};
  for (int i = 0; i < kNumResourceTypes; ++i) {
    if (instances[i] == 0) continue;
    rows.push_back(ResolutionRow{std::string(ToString(static_cast<ResourceType>(i))),
                                 instances[i], correct[i]});
    total.instances += instances[i];
    total.correct += correct[i];
  }
  rows.push_back(total);
  return rows;
}

std::string BuildReportJson(std::span<const CoverageRow> coverage,
                            std::span<const ResolutionRow> resolution,
                            const std::string &context_label) {
  nlohmann::ordered_json report;
  if (!context_label.empty()) report["context"] = context_label;
  report["coverage"] = nlohmann::ordered_json::array();
  for (const CoverageRow &row : coverage) {
    nlohmann::ordered_json entry;
    entry["label"] = row.label;
    entry["posts"] = row.posts;
    entry["posts_with_mentions"] = row.posts_with_mentions;
    entry["extracted"] = row.extracted;
    entry["extracted_correct"] = row.extracted_correct;
    entry["gold_mentions"] = row.gold_mentions;
    entry["gold_matched"] = row.gold_matched;
    entry["posts_with_mentions_pct"] =
        FormatPercentHalfUp(row.posts_with_mentions, row.posts);
    entry["wikifier_recall_pct"] =
        FormatPercentHalfUp(row.gold_matched, row.gold_mentions);
    report["coverage"].push_back(std::move(entry));
  }
  report["resolution"] = nlohmann::ordered_json::array();
  for (const ResolutionRow &row : resolution) {
    nlohmann::ordered_json entry;
    entry["type"] = row.label;
    entry["instances"] = row.instances;
    entry["correct"] = row.correct;
    entry["precision_pct"] = FormatPercentHalfUp(row.correct, row.instances);
    report["resolution"].push_back(std::move(entry));
  }
  return report.dump(2) + "\n";
}

}  // namespace muir
