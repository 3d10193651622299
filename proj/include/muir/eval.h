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
// Scores the wikifier against gold annotations: extraction coverage per
// annotator and resolution precision per resource type. All ratios stay
// integer pairs internally; percentages are formatted exactly once.

#ifndef MUIR_EVAL_H_
#define MUIR_EVAL_H_

#include <cstdint>
#include <istream>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "muir/catalog.h"
#include "muir/wikifier.h"

namespace muir {

// Gold mention spans: annotator label -> post_id -> [start, end) pairs.
using GoldMentions =
    std::map<std::string,
             std::map<std::string,
                      std::vector<std::pair<std::int64_t, std::int64_t>>>>;

struct GoldLink {
  std::int64_t start = 0;
  std::int64_t end = 0;
  std::string url;
};

// Gold resolutions: post_id -> annotated spans with their true URLs.
using GoldLinks = std::map<std::string, std::vector<GoldLink>>;

struct CoverageRow {
  std::string label;  // "annotator_1", "annotator_2", ..., "union"
  std::int64_t posts = 0;
  std::int64_t posts_with_mentions = 0;  // posts with >= 1 gold span
  std::int64_t extracted = 0;
  std::int64_t extracted_correct = 0;  // extracted spans equal to a gold span
  std::int64_t gold_mentions = 0;
  std::int64_t gold_matched = 0;  // distinct gold spans hit by extraction

  bool operator==(const CoverageRow &) const = default;
};

struct ResolutionRow {
  std::string label;  // resource type name, or "Total"
  std::int64_t instances = 0;
  std::int64_t correct = 0;

  bool operator==(const ResolutionRow &) const = default;
};

// num/den as a percentage with one decimal, rounded half-up exactly in
// integer arithmetic: (196, 1087) -> "18.0", (5, 196) -> "2.6". A zero
// denominator formats as "0.0".
std::string FormatPercentHalfUp(std::int64_t num, std::int64_t den);

// Gold mention file: {"annotator_1": {post_id: [[start, end], ...]}, ...}.
GoldMentions ParseGoldMentions(std::istream &in);

// Gold link file: {post_id: [{"start": int, "end": int, "url": str}]}.
GoldLinks ParseGoldLinks(std::istream &in);

// One row per annotator plus a "union" row over the merged span sets.
// A predicted span is correct only when byte-identical to a gold span.
// Throws MissingPost when the gold names an unknown post_id.
std::vector<CoverageRow> EvalCoverage(std::span<const ForumPost> posts,
                                      const GoldMentions &gold);

// Runs the short-form pipeline on each gold span's surface and compares the
// resolved URL with the gold URL byte for byte. Rows group by the resolved
// resource type (falling back to the hint's type when resolution fails) and
// a "Total" row sums them. Throws MissingPost on unknown post ids.
std::vector<ResolutionRow> EvalResolution(std::span<const ForumPost> posts,
                                          const Catalog &catalog,
                                          const GoldLinks &gold,
                                          const std::string &resolver_host);

// Pretty JSON report; `context_label` annotates which gold protocol the
// links were produced under and may be empty.
std::string BuildReportJson(std::span<const CoverageRow> coverage,
                            std::span<const ResolutionRow> resolution,
                            const std::string &context_label = "");

}  // namespace muir

#endif  // MUIR_EVAL_H_
