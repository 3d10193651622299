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

#include "muir/service.h"

#include <cctype>
#include <cstdint>
#include <map>
#include <thread>
#include <utility>

#include "httplib.h"
#include "json.hpp"
#include "muir/errors.h"
#include "muir/identifier.h"
#include "muir/resolver.h"

namespace muir {
namespace {

constexpr int kRedirectStatus = 302;
constexpr std::size_t kNearMissLimit = 3;
constexpr std::size_t kDefaultSearchK = 10;

const char kJsonType[] = "application/json; charset=utf-8";
const char kTextType[] = "text/plain; charset=utf-8";

HttpResponse JsonError(int status, const std::string &message) {
  nlohmann::ordered_json body;
  body["error"] = message;
  return HttpResponse{status, {{"Content-Type", kJsonType}}, body.dump()};
}

HttpResponse BadRequest(const std::string &message) {
  return JsonError(400, message);
}

// application/x-www-form-urlencoded component: '+' is a space and %XX is a
// byte. False on a truncated or non-hex escape.
bool DecodeQueryComponent(std::string_view in, std::string &out) {
  out.clear();
  for (std::size_t i = 0; i < in.size(); ++i) {
    char c = in[i];
    if (c == '+') {
      out += ' ';
    } else if (c == '%') {
      if (i + 2 >= in.size() ||
          !std::isxdigit(static_cast<unsigned char>(in[i + 1])) ||
          !std::isxdigit(static_cast<unsigned char>(in[i + 2]))) {
        return false;
      }
      auto nibble = [](char h) {
        if (h >= '0' && h <= '9') return h - '0';
        if (h >= 'a' && h <= 'f') return h - 'a' + 10;
        return h - 'A' + 10;
      };
      out += static_cast<char>(nibble(in[i + 1]) * 16 + nibble(in[i + 2]));
      i += 2;
    } else {
      out += c;
    }
  }
  return true;
}

// Raw path split on '/'; the leading '/' is consumed by the caller.
std::vector<std::string> SplitSegments(std::string_view path) {
  std::vector<std::string> segments;
  std::size_t start = 0;
  while (start <= path.size()) {
    std::size_t slash = path.find('/', start);
    if (slash == std::string_view::npos) slash = path.size();
    segments.emplace_back(path.substr(start, slash - start));
    start = slash + 1;
  }
  return segments;
}

struct ParsedTarget {
  std::string path;  // still percent-encoded
  std::map<std::string, std::string> query;  // decoded, last value wins
  bool ok = false;
};

ParsedTarget ParseTarget(std::string_view target) {
  ParsedTarget out;
  std::size_t qmark = target.find('?');
  out.path = std::string(target.substr(0, qmark));
  if (qmark != std::string_view::npos) {
    std::string_view rest = target.substr(qmark + 1);
    while (!rest.empty()) {
      std::size_t amp = rest.find('&');
      std::string_view pair = rest.substr(0, amp);
      rest = amp == std::string_view::npos ? std::string_view{}
                                           : rest.substr(amp + 1);
      if (pair.empty()) continue;
      std::size_t eq = pair.find('=');
      std::string key;
      std::string value;
      if (!DecodeQueryComponent(pair.substr(0, eq), key)) return out;
      if (eq != std::string_view::npos &&
          !DecodeQueryComponent(pair.substr(eq + 1), value)) {
        return out;
      }
      out.query[key] = value;
    }
  }
  out.ok = true;
  return out;
}

bool ParseInt64(const std::string &text, std::int64_t &out) {
  if (text.empty()) return false;
  std::size_t pos = 0;
  try {
    out = std::stoll(text, &pos);
  } catch (const std::exception &) {
    return false;
  }
  return pos == text.size();
}

std::vector<std::string> SplitInstructors(const std::string &joined) {
  std::vector<std::string> names;
  std::size_t start = 0;
  while (start <= joined.size()) {
    std::size_t amp = joined.find('&', start);
    if (amp == std::string::npos) amp = joined.size();
    if (amp > start) names.push_back(joined.substr(start, amp - start));
    start = amp + 1;
  }
  return names;
}

nlohmann::ordered_json CandidateJson(const ScoredCandidate &hit) {
  nlohmann::ordered_json entry;
  entry["canonical"] = SerializeCanonical(hit.canonical);
  entry["url"] = hit.platform_url;
  entry["score"] = hit.score.value();
  return entry;
}

HttpResponse Redirect(const std::string &url, const CanonicalForm &canonical,
                      bool ambiguous) {
  HttpResponse res;
  res.status = kRedirectStatus;
  res.headers.emplace_back("Location", url);
  res.headers.emplace_back("X-MUIR-Canonical", SerializeCanonical(canonical));
  if (ambiguous) res.headers.emplace_back("X-MUIR-Ambiguous", "true");
  return res;
}

HttpResponse HandleOpaque(const Catalog &catalog, const std::string &id) {
  if (!IsOpaqueIdText(id)) return BadRequest("malformed opaque id");
  try {
    CanonicalForm canonical = catalog.LookupOpaque(OpaqueId{id});
    return Redirect(catalog.LookupCanonical(canonical), canonical, false);
  } catch (const NotFound &) {
    return JsonError(404, "unknown opaque id");
  }
}

HttpResponse HandleCanonical(const Catalog &catalog,
                             const std::string &path_after_slash) {
  CanonicalForm canonical;
  try {
    canonical = ParseCanonical(catalog.host() + "/" + path_after_slash);
  } catch (const MalformedCanonical &err) {
    return BadRequest(err.what());
  }
  try {
    return Redirect(catalog.LookupCanonical(canonical), canonical, false);
  } catch (const NotFound &) {
    return JsonError(404, "unknown canonical form");
  }
}

HttpResponse HandleShortForm(const Catalog &catalog,
                             const std::vector<std::string> &segments,
                             const std::string &path_after_slash,
                             const std::map<std::string, std::string> &query,
                             const PostIndex *posts) {
  PostContext ctx;
  if (auto it = query.find("post_id"); it != query.end()) {
    if (posts == nullptr) {
      return BadRequest("post_id given but no post dump is loaded");
    }
    auto post = posts->find(it->second);
    if (post == posts->end()) return JsonError(404, "unknown post_id");
    ctx = post->second.context;
  }

  std::string text = catalog.host() + "/";
  std::string first_decoded;
  if (segments.size() == 2 && DecodeQueryComponent(segments[0], first_decoded)
      && IsTypeKeyword(first_decoded)) {
    // `/lecture/2-5` style: the course cannot live in the path, so it comes
    // from the query or from the referenced post.
    std::string course;
    if (auto it = query.find("course"); it != query.end()) course = it->second;
    if (course.empty()) course = ctx.course;
    if (course.empty()) return BadRequest("missing course");
    text += PercentEncodeSegment(course) + "/";
  }
  text += path_after_slash;

  ShortForm sf;
  try {
    sf = ParseShortForm(text);
  } catch (const MalformedShortForm &err) {
    return BadRequest(err.what());
  }

  if (auto it = query.find("platform"); it != query.end()) {
    ctx.platform = it->second;
  }
  if (auto it = query.find("course"); it != query.end()) {
    ctx.course = it->second;
  }
  if (auto it = query.find("session_ms"); it != query.end()) {
    std::int64_t session = 0;
    if (!ParseInt64(it->second, session)) {
      return BadRequest("malformed session_ms");
    }
    ctx.session = session;
  }
  if (auto it = query.find("instructors"); it != query.end()) {
    ctx.instructors = SplitInstructors(it->second);
  }
  if (auto it = query.find("forum"); it != query.end()) {
    ctx.forum = it->second;
  }

  try {
    ResolutionResult res = Resolve(sf, ctx, catalog);
    return Redirect(res.platform_url, res.canonical, res.ambiguous);
  } catch (const NoCandidates &) {
  } catch (const NoPlausibleMatch &) {
  }

  // Unresolvable: answer with the closest catalog entries instead of a
  // bare 404 so callers can see how near they were.
  nlohmann::ordered_json body = nlohmann::ordered_json::array();
  for (const ScoredCandidate &hit : Search(sf, ctx, catalog, kNearMissLimit)) {
    body.push_back(CandidateJson(hit));
  }
  return HttpResponse{404, {{"Content-Type", kJsonType}}, body.dump()};
}

HttpResponse HandleSearch(const Catalog &catalog,
                          const std::map<std::string, std::string> &query) {
  auto platform = query.find("platform");
  if (platform == query.end() || platform->second.empty()) {
    return BadRequest("missing platform");
  }
  auto course = query.find("course");
  if (course == query.end() || course->second.empty()) {
    return BadRequest("missing course");
  }

  PostContext ctx;
  ctx.platform = platform->second;
  ctx.course = course->second;
  if (auto it = query.find("session_ms"); it != query.end()) {
    std::int64_t session = 0;
    if (!ParseInt64(it->second, session)) {
      return BadRequest("malformed session_ms");
    }
    ctx.session = session;
  }

  std::size_t k = kDefaultSearchK;
  if (auto it = query.find("k"); it != query.end()) {
    std::int64_t parsed = 0;
    if (!ParseInt64(it->second, parsed) || parsed < 0) {
      return BadRequest("malformed k");
    }
    k = static_cast<std::size_t>(parsed);
  }

  std::string q;
  if (auto it = query.find("q"); it != query.end()) q = it->second;
  ShortForm sf = ShortFormFromQuery(q, catalog.host(), ctx.course);

  nlohmann::ordered_json body = nlohmann::ordered_json::array();
  for (const ScoredCandidate &hit : Search(sf, ctx, catalog, k)) {
    body.push_back(CandidateJson(hit));
  }
  return HttpResponse{200, {{"Content-Type", kJsonType}}, body.dump()};
}

}  // namespace

const std::string *HttpResponse::Header(std::string_view name) const {
  for (const auto &[key, value] : headers) {
    if (key == name) return &value;
  }
  return nullptr;
}

PostIndex BuildPostIndex(std::span<const ForumPost> posts) {
  PostIndex index;
  for (const ForumPost &post : posts) index.emplace(post.post_id, post);
  return index;
}

HttpResponse HandleRequest(const Catalog &catalog, std::string_view target,
                           const PostIndex *posts) {
  ParsedTarget parsed = ParseTarget(target);
  if (!parsed.ok) return BadRequest("malformed query string");
  if (parsed.path.empty() || parsed.path[0] != '/') {
    return BadRequest("malformed path");
  }

  if (parsed.path == "/healthz") {
    return HttpResponse{200, {{"Content-Type", kTextType}}, "ok"};
  }
  if (parsed.path == "/search") return HandleSearch(catalog, parsed.query);

  std::string after_slash = parsed.path.substr(1);
  if (after_slash.empty()) return BadRequest("unsupported path shape");
  std::vector<std::string> segments = SplitSegments(after_slash);

  if (segments.size() == 2 && segments[0] == "id") {
    return HandleOpaque(catalog, segments[1]);
  }
  if (segments.size() == 6) return HandleCanonical(catalog, after_slash);
  if (segments.size() >= 2 && segments.size() <= 4) {
    return HandleShortForm(catalog, segments, after_slash, parsed.query,
                           posts);
  }
  return BadRequest("unsupported path shape");
}

struct ResolverService::Impl {
  httplib::Server server;
  std::thread thread;
};

ResolverService::ResolverService(Catalog catalog,
                                 std::optional<PostIndex> posts)
    : catalog_(std::make_shared<const Catalog>(std::move(catalog))),
      posts_(std::move(posts)),
      impl_(std::make_unique<Impl>()) {}

ResolverService::~ResolverService() { Stop(); }

bool ResolverService::Start(const ServiceConfig &config) {
  impl_->server.Get(".*", [this](const httplib::Request &req,
                                 httplib::Response &res) {
    HttpResponse out =
        HandleRequest(*snapshot(), req.target,
                      posts_.has_value() ? &*posts_ : nullptr);
    res.status = out.status;
    std::string content_type;
    for (const auto &[key, value] : out.headers) {
      if (key == "Content-Type") {
        content_type = value;
      } else {
        res.set_header(key, value);
      }
    }
    if (!out.body.empty() || !content_type.empty()) {
      res.set_content(out.body, content_type.empty() ? kTextType
                                                     : content_type.c_str());
    }
  });

  if (config.port == 0) {
    port_ = impl_->server.bind_to_any_port(config.bind_address);
    if (port_ <= 0) return false;
  } else {
    if (!impl_->server.bind_to_port(config.bind_address, config.port)) {
      return false;
    }
    port_ = config.port;
  }
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return true;
}

void ResolverService::Reload(Catalog next) {
  auto snapshot = std::make_shared<const Catalog>(std::move(next));
  std::lock_guard<std::mutex> lock(mu_);
  catalog_ = std::move(snapshot);
}

std::shared_ptr<const Catalog> ResolverService::snapshot() const {
  std::lock_guard<std::mutex> lock(mu_);
  return catalog_;
}

void ResolverService::Wait() {
  if (impl_->thread.joinable()) impl_->thread.join();
}

void ResolverService::Stop() {
  impl_->server.stop();
  Wait();
}

}  // namespace muir
