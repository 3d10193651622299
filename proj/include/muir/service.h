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
// HTTP resolver service. Request handling is a pure function from the raw
// request target to a response so the whole route surface can be tested
// without sockets; a thin server shell feeds it real connections.
//
// Routes, all GET:
//   /healthz                             200 "ok"
//   /id/{opaque}                         302 to the platform URL
//   /{six canonical segments}            302 to the platform URL
//   /{one to four short-form segments}   302 via best-effort resolution
//   /search?q=&platform=&course=&k=      200 JSON candidate list
//
// Path segments never include the resolver authority; it is prepended from
// the catalog before parsing. A two-segment path whose first segment is a
// type keyword takes its course segment from the `course` query parameter.

#ifndef MUIR_SERVICE_H_
#define MUIR_SERVICE_H_

#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "muir/catalog.h"
#include "muir/wikifier.h"

namespace muir {

struct HttpResponse {
  int status = 0;
  // Emission order is fixed so identical requests serialize identically.
  std::vector<std::pair<std::string, std::string>> headers;
  std::string body;

  bool operator==(const HttpResponse &) const = default;

  // Convenience for tests.
  const std::string *Header(std::string_view name) const;
};

// Ingested posts addressable by post_id for the `post_id=` context mode.
using PostIndex = std::unordered_map<std::string, ForumPost>;

PostIndex BuildPostIndex(std::span<const ForumPost> posts);

// Answers one request against an immutable catalog snapshot. `target` is the
// raw request target, query string and percent-encoding intact. `posts` may
// be null when no post dump was ingested.
HttpResponse HandleRequest(const Catalog &catalog, std::string_view target,
                           const PostIndex *posts = nullptr);

struct ServiceConfig {
  std::string bind_address = "127.0.0.1";
  int port = 0;  // 0 picks a free port
};

// Server shell around HandleRequest. Requests in flight keep the snapshot
// they started with; Reload swaps in a new catalog atomically.
class ResolverService {
 public:
  explicit ResolverService(Catalog catalog,
                           std::optional<PostIndex> posts = std::nullopt);
  ~ResolverService();

  ResolverService(const ResolverService &) = delete;
  ResolverService &operator=(const ResolverService &) = delete;

  // Binds and serves on a background thread; false when the bind fails.
  bool Start(const ServiceConfig &config);
  // Port actually bound; valid after a successful Start.
  int port() const { return port_; }

  void Reload(Catalog next);
  std::shared_ptr<const Catalog> snapshot() const;

  // Blocks until Stop is called from another thread (or a signal handler).
  void Wait();
  void Stop();

 private:
  struct Impl;

  mutable std::mutex mu_;
  std::shared_ptr<const Catalog> catalog_;
  std::optional<PostIndex> posts_;
  std::unique_ptr<Impl> impl_;
  int port_ = 0;
};

}  // namespace muir

#endif  // MUIR_SERVICE_H_
