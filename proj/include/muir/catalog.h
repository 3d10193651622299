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
// Immutable store of harvested learning resources. Ingestion is offline and
// single-writer; a built catalog is safe to share across readers.

#ifndef MUIR_CATALOG_H_
#define MUIR_CATALOG_H_

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "muir/identifier.h"

namespace muir {

// One crawled platform resource.
struct LearningResource {
  std::string platform;                    // e.g. "Coursera"
  std::string course;                      // course slug
  std::int64_t session = 0;                // epoch milliseconds UTC
  std::vector<std::string> instructors;    // ordered
  std::optional<std::string> institution;  // metadata only, not a path field
  ResourceType resource_type = ResourceType::kVideos;
  std::string slug;                        // platform resource slug
  std::optional<std::string> title;
  std::string platform_url;                // unique within a catalog
  std::optional<std::string> forum_week;   // e.g. "Week 2"

  bool operator==(const LearningResource &) const = default;
};

// Maps one of the thirteen platform labels (case-insensitive) onto a
// canonical resource type. Throws UnknownLabel for anything else.
ResourceType MapResourceType(std::string_view platform_label);

// Indexed, immutable snapshot of a resource collection. Every lookup map is
// derived from `resources()` at build time; re-ingesting the same dump
// reproduces identical canonical forms and opaque ids.
class Catalog {
 public:
  Catalog() = default;

  // Builds a catalog from a JSON Lines resource dump. One object per line:
  //   {"platform": str, "course": str, "session_ms": int,
  //    "instructors": [str], "institution": str|null, "type_label": str,
  //    "slug": str, "title": str|null, "url": str, "forum_week": str|null}
  // `type_label` is a platform vocabulary word converted by MapResourceType.
  // Throws MalformedRecord (with line number), DuplicateUrl, OpaqueCollision.
  static Catalog Ingest(std::istream &jsonl, std::string host);

  // Builds a catalog from already-validated resources (fixtures, loaders).
  static Catalog FromResources(std::vector<LearningResource> resources,
                               std::string host);

  // Derived index file, JSON. The source dump stays authoritative; the
  // saved file is a cache that Load() verifies by re-minting every id.
  void Save(std::ostream &out) const;
  static Catalog Load(std::istream &in);

  const std::string &host() const { return host_; }
  const std::vector<LearningResource> &resources() const { return resources_; }
  std::size_t size() const { return resources_.size(); }

  // Canonical form of a cataloged resource, under this catalog's authority.
  CanonicalForm CanonicalFor(const LearningResource &resource) const;

  // Canonical form -> platform URL. The authority component is normalized to
  // this catalog's host, so mirrors answering under another name still
  // resolve. Throws NotFound.
  const std::string &LookupCanonical(const CanonicalForm &canonical) const;

  // Opaque id -> canonical form; inverse of minting over this catalog.
  // Throws NotFound.
  CanonicalForm LookupOpaque(const OpaqueId &id) const;

  // All resources of (platform, course), optionally narrowed to a session
  // and to resources whose instructor list intersects `instructors`.
  // Ordered by (resource_type, slug, session, platform_url). Throws NotFound
  // when the platform+course pair is unknown; a filter that matches nothing
  // returns an empty list.
  std::vector<const LearningResource *> CourseContext(
      std::string_view platform, std::string_view course,
      std::optional<std::int64_t> session = std::nullopt,
      std::span<const std::string> instructors = {}) const;

  // Index accessors, mainly for invariant checks.
  const std::unordered_map<std::string, std::string> &canonical_index() const {
    return by_canonical_;
  }
  const std::unordered_map<std::string, std::string> &opaque_index() const {
    return by_opaque_;
  }
  const std::unordered_map<std::string, std::vector<std::uint32_t>> &
  token_index() const {
    return token_index_;
  }

 private:
  void BuildIndexes();

  std::string host_;
  std::vector<LearningResource> resources_;
  std::unordered_map<std::string, std::string> by_canonical_;  // form -> url
  std::unordered_map<std::string, std::string> by_opaque_;     // id -> form
  // (platform, course, session) -> resource indices
  std::map<std::tuple<std::string, std::string, std::int64_t>,
           std::vector<std::uint32_t>>
      course_index_;
  // token -> resource indices, tokens drawn from slug and title
  std::unordered_map<std::string, std::vector<std::uint32_t>> token_index_;
};

}  // namespace muir

#endif  // MUIR_CATALOG_H_
