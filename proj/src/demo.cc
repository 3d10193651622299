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

#include "muir/demo.h"

#include <sstream>
#include <string>
#include <vector>

#include "muir/catalog.h"
#include "muir/errors.h"
#include "muir/identifier.h"
#include "muir/resolver.h"
#include "muir/wikifier.h"

namespace muir {
namespace {

const char kHost[] = "www.example.org";

const char kFixtureJsonl[] =
    R"({"platform": "Coursera", "course": "accounting-analytics", )"
    R"("session_ms": 1480320000000, )"
    R"("instructors": ["Brian J Bushee", "Christopher D. Ittner"], )"
    R"("institution": null, "type_label": "videos", )"
    R"("slug": )"
    R"("expense-recognition-red-flags-reserve-accounts-and-write-offs-2-5", )"
    R"("title": null, )"
    R"("url": "www.coursera.org/learn/accounting-analytics/lecture/1UzkX/)"
    R"(expense-recognition-red-flags-reserve-accounts-and-write-offs-2-5", )"
    R"("forum_week": "Week 2"})"
    "\n";

const char kFormShort[] =
    "www.example.org/accounting-analytics/Week%202/lecture/2-5";

const char kFormCanonical[] =
    "www.example.org/Coursera/accounting-analytics/1480320000000/"
    "Brian%20J%20Bushee%26Christopher%20D.%20Ittner/Videos/"
    "expense-recognition-red-flags-reserve-accounts-and-write-offs-2-5";

const char kOpaqueValue[] = "2kkxx8becgcn9l9j";

const char kFormUrl[] =
    "www.coursera.org/learn/accounting-analytics/lecture/1UzkX/"
    "expense-recognition-red-flags-reserve-accounts-and-write-offs-2-5";

ForumPost DemoPost() {
  ForumPost post;
  post.post_id = "demo-post";
  post.body =
      "A quick question about lecture 2.5 from this week's materials.";
  post.context.platform = "Coursera";
  post.context.course = "accounting-analytics";
  post.context.session = 1480320000000LL;
  post.context.forum = "Week 2";
  return post;
}

}  // namespace

const std::string &DemoFixtureJsonl() {
  static const std::string value = kFixtureJsonl;
  return value;
}

const std::string &DemoHost() {
  static const std::string value = kHost;
  return value;
}

const std::string &DemoFormShort() {
  static const std::string value = kFormShort;
  return value;
}

const std::string &DemoFormCanonical() {
  static const std::string value = kFormCanonical;
  return value;
}

const std::string &DemoOpaqueValue() {
  static const std::string value = kOpaqueValue;
  return value;
}

const std::string &DemoFormUrl() {
  static const std::string value = kFormUrl;
  return value;
}

int RunDemo(std::ostream &out, bool as_json) {
  std::istringstream fixture(DemoFixtureJsonl());
  return RunDemo(out, as_json, fixture);
}

int RunDemo(std::ostream &out, bool as_json, std::istream &fixture) {
  Catalog catalog;
  try {
    catalog = Catalog::Ingest(fixture, kHost);
  } catch (const Error &err) {
    out << "error: " << err.what() << "\n";
    return 2;
  }

  ForumPost post = DemoPost();
  AnnotatedPost annotated =
      WikifyPost(post, &catalog, kHost, /*link_now=*/true);

  std::vector<std::string> problems;
  std::string form_short;
  std::string form_canonical;
  std::string form_opaque;
  std::string form_url;
  std::string score_text = "-";
  bool ambiguous = false;

  if (annotated.mentions.size() != 1) {
    problems.push_back("expected exactly one mention, found " +
                       std::to_string(annotated.mentions.size()));
  } else {
    const LinkedMention &linked = annotated.mentions.front();
    form_short = SerializeShortForm(linked.short_form);
    if (form_short != DemoFormShort()) {
      problems.push_back("short form diverged");
    }
    if (!linked.resolution) {
      problems.push_back("mention did not resolve");
    } else {
      const ResolutionResult &res = *linked.resolution;
      form_canonical = SerializeCanonical(res.canonical);
      OpaqueId id = MintOpaque(res.canonical);
      form_opaque = std::string(kHost) + "/id/" + id.value;
      form_url = res.platform_url;
      score_text = std::to_string(res.score.num) + "/" +
                   std::to_string(res.score.den);
      ambiguous = res.ambiguous;

      if (form_canonical != DemoFormCanonical()) {
        problems.push_back("canonical form diverged");
      }
      if (id.value != DemoOpaqueValue()) {
        problems.push_back("opaque id diverged");
      }
      if (form_url != DemoFormUrl()) {
        problems.push_back("platform URL diverged");
      }
      try {
        if (!(catalog.LookupOpaque(id) == res.canonical) ||
            catalog.LookupCanonical(res.canonical) != form_url) {
          problems.push_back("catalog lookups disagree with the resolution");
        }
      } catch (const Error &err) {
        problems.push_back(std::string("catalog lookup failed: ") +
                           err.what());
      }
    }
  }

  if (as_json) {
    out << AnnotatedPostToJsonLine(annotated) << "\n";
    return problems.empty() ? 0 : 1;
  }

  auto form_or_placeholder = [](const std::string &form) {
    return form.empty() ? std::string("(none)") : form;
  };
  out << "post:      " << post.body << "\n";
  if (annotated.mentions.size() == 1) {
    const Mention &m = annotated.mentions.front().mention;
    out << "mention:   \"" << m.surface << "\" [" << m.start << ", " << m.end
        << ")\n";
  }
  out << "I    " << form_or_placeholder(form_short) << "\n";
  out << "II   " << form_or_placeholder(form_canonical) << "\n";
  out << "III  " << form_or_placeholder(form_opaque) << "\n";
  out << "IV   " << form_or_placeholder(form_url) << "\n";
  out << "score:     " << score_text << "\n";
  out << "ambiguous: " << (ambiguous ? "yes" : "no") << "\n";
  if (problems.empty()) {
    out << "chain: ok\n";
    return 0;
  }
  for (const std::string &problem : problems) {
    out << "chain: MISMATCH " << problem << "\n";
  }
  return 1;
}

}  // namespace muir
