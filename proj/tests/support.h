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
// Deterministic generators shared by the unit, property and acceptance
// suites. Everything is seeded, so failures reproduce.

#ifndef MUIR_TESTS_SUPPORT_H_
#define MUIR_TESTS_SUPPORT_H_

#include <cstdint>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "muir/catalog.h"
#include "muir/identifier.h"

namespace muir::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  int Int(int lo, int hi) {  // inclusive
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }

  std::int64_t Int64(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
  }

  bool Chance(double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(engine_) < p;
  }

  template <typename T>
  const T &Pick(const std::vector<T> &options) {
    return options[Int(0, static_cast<int>(options.size()) - 1)];
  }

 private:
  std::mt19937_64 engine_;
};

inline std::string SlugWord(Rng &rng) {
  static const std::vector<std::string> kWords = {
      "intro",    "advanced", "expense",  "revenue", "network", "gradient",
      "matrix",   "protein",  "review",   "summary", "basics",  "deep",
      "linear",   "random",   "signal",   "market",  "risk",    "cash",
      "flow",     "model",    "analysis", "theory",  "systems", "design",
  };
  return rng.Pick(kWords);
}

inline std::string InstructorName(Rng &rng) {
  static const std::vector<std::string> kFirst = {
      "Alice", "Brian", "Chen", "Dana", "Erik", "Fatima", "Grace", "Hiro"};
  static const std::vector<std::string> kLast = {
      "Ng",     "Bushee", "Ittner", "Okafor", "Silva",
      "Tanaka", "Weber",  "Kumar",  "Moreau", "Petrov"};
  std::string name = rng.Pick(kFirst);
  if (rng.Chance(0.3)) {
    name += ' ';
    name += static_cast<char>('A' + rng.Int(0, 25));
    name += '.';
  }
  name += ' ';
  name += rng.Pick(kLast);
  return name;
}

inline std::string CourseSlug(Rng &rng) {
  std::string slug = SlugWord(rng);
  int extra = rng.Int(0, 2);
  for (int i = 0; i < extra; ++i) {
    slug += '-';
    slug += SlugWord(rng);
  }
  return slug;
}

// A course slug that can also contain characters needing percent-encoding.
inline std::string AwkwardSegment(Rng &rng) {
  std::string value = SlugWord(rng);
  static const std::vector<std::string> kSpice = {" ", "&", "%", "/", " 2", "%2"};
  int extra = rng.Int(1, 2);
  for (int i = 0; i < extra; ++i) {
    value += rng.Pick(kSpice);
    value += SlugWord(rng);
  }
  return value;
}

inline std::string BlockDesignator(Rng &rng) {
  std::string block = std::to_string(rng.Int(0, 999));
  if (rng.Chance(0.6)) {
    block += '-';
    block += std::to_string(rng.Int(0, 999));
  }
  return block;
}

// Forum labels never collide with a bare type-hint keyword, matching real
// forum naming ("Week 3", "General Discussion"); a bare-keyword forum is
// indistinguishable from a type hint in four-segment forms.
inline std::string ForumLabel(Rng &rng) {
  if (rng.Chance(0.7)) return "Week " + std::to_string(rng.Int(1, 12));
  static const std::vector<std::string> kNames = {
      "General Discussion", "Assignments Help", "Course Material",
      "Study Group", "Meet & Greet"};
  return rng.Pick(kNames);
}

inline ShortForm GenShortForm(Rng &rng) {
  ShortForm sf;
  static const std::vector<std::string> kHosts = {
      "www.example.org", "muir.example.net", "resolver.test"};
  sf.host = rng.Pick(kHosts);
  sf.course = rng.Chance(0.15) ? AwkwardSegment(rng) : CourseSlug(rng);
  if (rng.Chance(0.6)) sf.forum = ForumLabel(rng);
  sf.resource_type_hint = rng.Pick(HintKeywords());
  if (rng.Chance(0.7)) sf.block = BlockDesignator(rng);
  return sf;
}

inline CanonicalForm GenCanonicalForm(Rng &rng) {
  CanonicalForm c;
  c.host = "www.example.org";
  static const std::vector<std::string> kPlatforms = {
      "Coursera", "edX", "FutureLearn", "XuetangX", "FUN"};
  c.platform = rng.Pick(kPlatforms);
  c.course = rng.Chance(0.1) ? AwkwardSegment(rng) : CourseSlug(rng);
  c.session = rng.Int64(0, 2000000000000LL);
  int n = rng.Int(1, 3);
  for (int i = 0; i < n; ++i) c.instructors.push_back(InstructorName(rng));
  c.resource_type = static_cast<ResourceType>(rng.Int(0, kNumResourceTypes - 1));
  c.slug = CourseSlug(rng);
  if (rng.Chance(0.8)) {
    c.slug += '-' + std::to_string(rng.Int(0, 20));
    if (rng.Chance(0.7)) c.slug += '-' + std::to_string(rng.Int(0, 20));
  }
  return c;
}

// A catalog resource; `serial` keeps platform_url unique within one catalog.
inline LearningResource GenResource(Rng &rng, int serial) {
  CanonicalForm c = GenCanonicalForm(rng);
  LearningResource r;
  r.platform = c.platform;
  r.course = c.course;
  r.session = c.session;
  r.instructors = c.instructors;
  if (rng.Chance(0.4)) r.institution = rng.Pick(std::vector<std::string>{
      "Wharton", "MIT", "Tsinghua", "Open University"});
  r.resource_type = c.resource_type;
  r.slug = c.slug;
  if (rng.Chance(0.5)) r.title = SlugWord(rng) + " " + SlugWord(rng);
  r.platform_url = "www.platform.example/learn/" + std::to_string(serial) +
                   "/" + c.slug;
  if (rng.Chance(0.6)) r.forum_week = "Week " + std::to_string(rng.Int(1, 12));
  return r;
}

// A random catalog with `n` resources and pairwise-distinct canonical forms.
inline std::vector<LearningResource> GenResourceSet(Rng &rng, int n) {
  std::vector<LearningResource> resources;
  std::unordered_set<std::string> seen;
  int serial = 0;
  while (static_cast<int>(resources.size()) < n) {
    LearningResource r = GenResource(rng, serial++);
    CanonicalForm c;
    c.host = "www.example.org";
    c.platform = r.platform;
    c.course = r.course;
    c.session = r.session;
    c.instructors = r.instructors;
    c.resource_type = r.resource_type;
    c.slug = r.slug;
    if (seen.insert(SerializeCanonical(c)).second) {
      resources.push_back(std::move(r));
    }
  }
  return resources;
}

}  // namespace muir::testing

#endif  // MUIR_TESTS_SUPPORT_H_
