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

#include "muir/catalog.h"

#include <algorithm>
#include <cctype>
#include <limits>
#include <stdexcept>
#include <utility>

#include "json.hpp"
#include "muir/errors.h"
#include "muir/jsonl.h"

namespace muir {
namespace {

std::string ToLowerAscii(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char ch) {
    return static_cast<char>(std::tolower(ch));
  });
  return out;
}

// Validation shared by Ingest and FromResources; `line` is 0 for in-memory
// construction, where errors become invalid_argument instead.
void CheckResource(const LearningResource &resource, std::size_t line) {
  auto fail = [line](const std::string &what) -> void {
    if (line > 0) throw MalformedRecord(line, what);
    throw std::invalid_argument(what);
  };
  if (resource.platform.empty()) fail("platform is empty");
  if (resource.course.empty()) fail("course is empty");
  if (resource.session < 0) fail("session_ms must be non-negative");
  if (resource.slug.empty()) fail("slug is empty");
  if (resource.platform_url.empty()) fail("url is empty");
  if (resource.instructors.empty()) fail("instructors must be non-empty");
  for (const auto &name : resource.instructors) {
    if (name.empty()) fail("instructor name is empty");
    // '&' is the wire separator between instructor names.
    if (name.find('&') != std::string::npos) {
      fail("instructor name contains '&': " + name);
    }
  }
}

LearningResource ResourceFromJson(const nlohmann::json &record,
                                  std::size_t line) {
  LearningResource resource;
  resource.platform = RequireString(record, "platform", line);
  resource.course = RequireString(record, "course", line);
  resource.session = RequireNonNegativeInt(record, "session_ms", line);
  if (!record.contains("instructors") || !record["instructors"].is_array()) {
    throw MalformedRecord(line, "missing array field \"instructors\"");
  }
  for (const auto &name : record["instructors"]) {
    if (!name.is_string()) {
      throw MalformedRecord(line, "instructors must be strings");
    }
    resource.instructors.push_back(name.get<std::string>());
  }
  resource.institution = OptionalString(record, "institution", line);
  const std::string label = RequireString(record, "type_label", line);
  try {
    resource.resource_type = MapResourceType(label);
  } catch (const UnknownLabel &e) {
    throw MalformedRecord(line, e.what());
  }
  resource.slug = RequireString(record, "slug", line);
  resource.title = OptionalString(record, "title", line);
  resource.platform_url = RequireString(record, "url", line);
  resource.forum_week = OptionalString(record, "forum_week", line);
  CheckResource(resource, line);
  return resource;
}

nlohmann::ordered_json ResourceToJson(const LearningResource &resource) {
  nlohmann::ordered_json record;
  record["platform"] = resource.platform;
  record["course"] = resource.course;
  record["session_ms"] = resource.session;
  record["instructors"] = resource.instructors;
  record["institution"] =
      resource.institution ? nlohmann::json(*resource.institution)
                           : nlohmann::json(nullptr);
  record["type"] = std::string(ToString(resource.resource_type));
  record["slug"] = resource.slug;
  record["title"] = resource.title ? nlohmann::json(*resource.title)
                                   : nlohmann::json(nullptr);
  record["url"] = resource.platform_url;
  record["forum_week"] = resource.forum_week
                             ? nlohmann::json(*resource.forum_week)
                             : nlohmann::json(nullptr);
  return record;
}

}  // namespace

ResourceType MapResourceType(std::string_view platform_label) {
  const std::string label = ToLowerAscii(platform_label);
  if (label == "videos") return ResourceType::kVideos;
  if (label == "slides") return ResourceType::kSlides;
  if (label == "exams" || label == "quizzes") return ResourceType::kExams;
  if (label == "transcript") return ResourceType::kTranscripts;
  if (label == "homeworks" || label == "assignments" ||
      label == "assessments" || label == "exercises") {
    return ResourceType::kAssessments;
  }
  if (label == "readings" || label == "articles") return ResourceType::kReadings;
  if (label == "programming scripts" || label == "additional materials") {
    return ResourceType::kAdditionalResources;
  }
  throw UnknownLabel("unknown platform resource label: " +
                     std::string(platform_label));
}

Catalog Catalog::Ingest(std::istream &jsonl, std::string host) {
  Catalog catalog;
  catalog.host_ = std::move(host);
  ForEachJsonLine(jsonl, [&catalog](std::size_t line,
                                    const nlohmann::json &record) {
    catalog.resources_.push_back(ResourceFromJson(record, line));
  });
  catalog.BuildIndexes();
  return catalog;
}

Catalog Catalog::FromResources(std::vector<LearningResource> resources,
                               std::string host) {
  Catalog catalog;
  catalog.host_ = std::move(host);
  catalog.resources_ = std::move(resources);
  for (const auto &resource : catalog.resources_) CheckResource(resource, 0);
  catalog.BuildIndexes();
  return catalog;
}

void Catalog::BuildIndexes() {
  std::unordered_map<std::string, std::uint32_t> urls;
  for (std::uint32_t i = 0; i < resources_.size(); ++i) {
    if (!urls.emplace(resources_[i].platform_url, i).second) {
      throw DuplicateUrl("duplicate platform url: " +
                         resources_[i].platform_url);
    }
  }
  for (std::uint32_t i = 0; i < resources_.size(); ++i) {
    const LearningResource &resource = resources_[i];
    const std::string canonical = SerializeCanonical(CanonicalFor(resource));
    const OpaqueId opaque = MintOpaque(CanonicalFor(resource));
    if (!by_canonical_.emplace(canonical, resource.platform_url).second) {
      throw OpaqueCollision("duplicate canonical form: " + canonical);
    }
    if (!by_opaque_.emplace(opaque.value, canonical).second) {
      throw OpaqueCollision("opaque id collision on " + opaque.value);
    }
    course_index_[{resource.platform, resource.course, resource.session}]
        .push_back(i);
    std::string text = resource.slug;
    if (resource.title) text += " " + *resource.title;
    for (const auto &token : NormalizeTokens(text)) {
      auto &postings = token_index_[token];
      if (postings.empty() || postings.back() != i) postings.push_back(i);
    }
  }
}

void Catalog::Save(std::ostream &out) const {
  nlohmann::ordered_json file;
  file["format"] = "muir-catalog/1";
  file["host"] = host_;
  auto &records = file["resources"] = nlohmann::ordered_json::array();
  for (const auto &resource : resources_) {
    records.push_back(ResourceToJson(resource));
  }
  out << file.dump(2) << '\n';
}

Catalog Catalog::Load(std::istream &in) {
  nlohmann::json file;
  try {
    file = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error &e) {
    throw MalformedRecord(1, e.what());
  }
  if (!file.is_object() || file.value("format", "") != "muir-catalog/1") {
    throw MalformedRecord(1, "not a muir-catalog/1 file");
  }
  std::vector<LearningResource> resources;
  for (const auto &record : file.at("resources")) {
    LearningResource resource;
    resource.platform = record.at("platform").get<std::string>();
    resource.course = record.at("course").get<std::string>();
    resource.session = record.at("session_ms").get<std::int64_t>();
    resource.instructors =
        record.at("instructors").get<std::vector<std::string>>();
    if (!record.at("institution").is_null()) {
      resource.institution = record.at("institution").get<std::string>();
    }
    resource.resource_type =
        ResourceTypeFromString(record.at("type").get<std::string>());
    resource.slug = record.at("slug").get<std::string>();
    if (!record.at("title").is_null()) {
      resource.title = record.at("title").get<std::string>();
    }
    resource.platform_url = record.at("url").get<std::string>();
    if (!record.at("forum_week").is_null()) {
      resource.forum_week = record.at("forum_week").get<std::string>();
    }
    resources.push_back(std::move(resource));
  }
  return FromResources(std::move(resources),
                       file.at("host").get<std::string>());
}

CanonicalForm Catalog::CanonicalFor(const LearningResource &resource) const {
  CanonicalForm c;
  c.host = host_;
  c.platform = resource.platform;
  c.course = resource.course;
  c.session = resource.session;
  c.instructors = resource.instructors;
  c.resource_type = resource.resource_type;
  c.slug = resource.slug;
  return c;
}

const std::string &Catalog::LookupCanonical(
    const CanonicalForm &canonical) const {
  std::string key;
  if (canonical.host == host_) {
    key = SerializeCanonical(canonical);
  } else {
    CanonicalForm normalized = canonical;
    normalized.host = host_;
    key = SerializeCanonical(normalized);
  }
  auto it = by_canonical_.find(key);
  if (it == by_canonical_.end()) {
    throw NotFound("canonical form not in catalog: " + key);
  }
  return it->second;
}

CanonicalForm Catalog::LookupOpaque(const OpaqueId &id) const {
  auto it = by_opaque_.find(id.value);
  if (it == by_opaque_.end()) {
    throw NotFound("opaque id not in catalog: " + id.value);
  }
  return ParseCanonical(it->second);
}

std::vector<const LearningResource *> Catalog::CourseContext(
    std::string_view platform, std::string_view course,
    std::optional<std::int64_t> session,
    std::span<const std::string> instructors) const {
  const std::tuple<std::string, std::string, std::int64_t> first{
      std::string(platform), std::string(course),
      std::numeric_limits<std::int64_t>::min()};
  auto it = course_index_.lower_bound(first);
  bool course_known = false;
  std::vector<const LearningResource *> matches;
  for (; it != course_index_.end(); ++it) {
    const auto &[key_platform, key_course, key_session] = it->first;
    if (key_platform != platform || key_course != course) break;
    course_known = true;
    if (session && key_session != *session) continue;
    for (std::uint32_t index : it->second) {
      const LearningResource &resource = resources_[index];
      if (!instructors.empty()) {
        bool intersects = false;
        for (const auto &wanted : instructors) {
          if (std::find(resource.instructors.begin(),
                        resource.instructors.end(),
                        wanted) != resource.instructors.end()) {
            intersects = true;
            break;
          }
        }
        if (!intersects) continue;
      }
      matches.push_back(&resource);
    }
  }
  if (!course_known) {
    throw NotFound("no resources for " + std::string(platform) + "/" +
                   std::string(course));
  }
  std::sort(matches.begin(), matches.end(),
            [](const LearningResource *a, const LearningResource *b) {
              return std::tie(a->resource_type, a->slug, a->session,
                              a->platform_url) <
                     std::tie(b->resource_type, b->slug, b->session,
                              b->platform_url);
            });
  return matches;
}

}  // namespace muir
