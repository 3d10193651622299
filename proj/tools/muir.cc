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
// Operator entry point: ingest a resource dump, serve the resolver, wikify
// forum posts, score against gold annotations, or run the walkthrough demo.
// Exit codes: 0 success, 1 verification failure, 2 input error.

#include <chrono>
#include <csignal>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "muir/catalog.h"
#include "muir/demo.h"
#include "muir/errors.h"
#include "muir/eval.h"
#include "muir/service.h"
#include "muir/wikifier.h"

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailure = 1;
constexpr int kInputError = 2;

volatile std::sig_atomic_t g_stop = 0;
volatile std::sig_atomic_t g_reload = 0;

void OnStopSignal(int) { g_stop = 1; }
void OnReloadSignal(int) { g_reload = 1; }

std::ifstream OpenInput(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path + " for reading");
  return in;
}

std::ofstream OpenOutput(const std::string &path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  return out;
}

muir::Catalog LoadCatalog(const std::string &path, const std::string &host) {
  std::ifstream in = OpenInput(path);
  muir::Catalog catalog = muir::Catalog::Load(in);
  if (!host.empty() && host != catalog.host()) {
    // A different authority changes canonical forms and opaque ids, so the
    // indexes must be rebuilt rather than relabeled.
    catalog = muir::Catalog::FromResources(catalog.resources(), host);
  }
  return catalog;
}

struct IngestOptions {
  std::string resources;
  std::string out;
  std::string host = "www.example.org";
};

int RunIngest(const IngestOptions &opt) {
  std::ifstream in = OpenInput(opt.resources);
  muir::Catalog catalog = muir::Catalog::Ingest(in, opt.host);
  std::ofstream out = OpenOutput(opt.out);
  catalog.Save(out);
  std::cout << "ingested " << catalog.size() << " resources for "
            << catalog.host() << " -> " << opt.out << "\n";
  return kOk;
}

struct ServeOptions {
  std::string catalog;
  std::string bind = "127.0.0.1:8080";
  std::string host;
  std::string posts;
};

int RunServe(const ServeOptions &opt) {
  std::string address = opt.bind;
  int port = 0;
  if (std::size_t colon = opt.bind.rfind(':');
      colon != std::string::npos) {
    address = opt.bind.substr(0, colon);
    try {
      port = std::stoi(opt.bind.substr(colon + 1));
    } catch (const std::exception &) {
      throw std::runtime_error("malformed --bind port");
    }
  } else {
    throw std::runtime_error("--bind must look like addr:port");
  }
  if (port < 0 || port > 65535) {
    throw std::runtime_error("--bind port out of range");
  }

  muir::Catalog catalog = LoadCatalog(opt.catalog, opt.host);
  std::optional<muir::PostIndex> posts;
  if (!opt.posts.empty()) {
    std::ifstream in = OpenInput(opt.posts);
    posts = muir::BuildPostIndex(muir::ReadPostDump(in));
  }
  const std::string authority = catalog.host();
  const std::size_t resource_count = catalog.size();

  muir::ResolverService service(std::move(catalog), std::move(posts));
  if (!service.Start(muir::ServiceConfig{address, port})) {
    throw std::runtime_error("cannot bind " + opt.bind);
  }
  std::cout << "listening on " << address << ":" << service.port() << " as "
            << authority << " (" << resource_count << " resources)"
            << std::endl;

  std::signal(SIGINT, OnStopSignal);
  std::signal(SIGTERM, OnStopSignal);
  std::signal(SIGHUP, OnReloadSignal);
  while (!g_stop) {
    if (g_reload) {
      g_reload = 0;
      try {
        service.Reload(LoadCatalog(opt.catalog, opt.host));
        std::cerr << "reloaded " << opt.catalog << "\n";
      } catch (const std::exception &err) {
        // Keep serving the previous snapshot.
        std::cerr << "reload failed: " << err.what() << "\n";
      }
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(100));
  }
  service.Stop();
  return kOk;
}

struct WikifyOptions {
  std::string catalog;
  std::string posts;
  std::string out;
  std::string host;
  bool link_now = false;
};

int RunWikify(const WikifyOptions &opt) {
  muir::Catalog catalog = LoadCatalog(opt.catalog, opt.host);
  std::ifstream posts_in = OpenInput(opt.posts);
  std::vector<muir::ForumPost> posts = muir::ReadPostDump(posts_in);

  std::vector<muir::AnnotatedPost> annotated;
  std::size_t mentions = 0;
  std::size_t resolved = 0;
  for (const muir::ForumPost &post : posts) {
    annotated.push_back(muir::WikifyPost(post, &catalog, catalog.host(),
                                         opt.link_now));
    for (const muir::LinkedMention &m : annotated.back().mentions) {
      mentions += 1;
      if (m.resolution) resolved += 1;
    }
  }
  std::ofstream out = OpenOutput(opt.out);
  muir::WriteAnnotatedPosts(out, annotated);
  std::cout << "wikified " << posts.size() << " posts: " << mentions
            << " mentions, " << resolved << " resolved -> " << opt.out
            << "\n";
  return kOk;
}

struct EvalOptions {
  std::string catalog;
  std::string posts;
  std::string gold_mentions;
  std::string gold_links;
  std::string report;
  std::string context;
};

int RunEval(const EvalOptions &opt) {
  muir::Catalog catalog = LoadCatalog(opt.catalog, "");
  std::ifstream posts_in = OpenInput(opt.posts);
  std::vector<muir::ForumPost> posts = muir::ReadPostDump(posts_in);

  std::ifstream mentions_in = OpenInput(opt.gold_mentions);
  muir::GoldMentions gold = muir::ParseGoldMentions(mentions_in);
  std::vector<muir::CoverageRow> coverage = muir::EvalCoverage(posts, gold);

  std::vector<muir::ResolutionRow> resolution;
  if (!opt.gold_links.empty()) {
    std::ifstream links_in = OpenInput(opt.gold_links);
    muir::GoldLinks links = muir::ParseGoldLinks(links_in);
    resolution =
        muir::EvalResolution(posts, catalog, links, catalog.host());
  }

  std::string report =
      muir::BuildReportJson(coverage, resolution, opt.context);
  std::ofstream out = OpenOutput(opt.report);
  out << report;

  for (const muir::CoverageRow &row : coverage) {
    std::cout << "coverage " << row.label << ": " << row.posts_with_mentions
              << "/" << row.posts << " posts with mentions ("
              << muir::FormatPercentHalfUp(row.posts_with_mentions, row.posts)
              << "%), recall "
              << muir::FormatPercentHalfUp(row.gold_matched,
                                           row.gold_mentions)
              << "%\n";
  }
  for (const muir::ResolutionRow &row : resolution) {
    std::cout << "resolution " << row.label << ": " << row.correct << "/"
              << row.instances << " ("
              << muir::FormatPercentHalfUp(row.correct, row.instances)
              << "%)\n";
  }
  std::cout << "report -> " << opt.report << "\n";
  return kOk;
}

struct DemoOptions {
  bool json = false;
  std::string fixture;
};

int RunDemoCommand(const DemoOptions &opt) {
  if (opt.fixture.empty()) return muir::RunDemo(std::cout, opt.json);
  std::ifstream fixture = OpenInput(opt.fixture);
  return muir::RunDemo(std::cout, opt.json, fixture);
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"MUIR: threefold identifiers for MOOC learning resources"};
  app.require_subcommand(1);

  IngestOptions ingest;
  CLI::App *ingest_cmd =
      app.add_subcommand("ingest", "Build a catalog from a resource dump");
  ingest_cmd->add_option("--resources", ingest.resources,
                         "JSON Lines resource dump")->required();
  ingest_cmd->add_option("--out", ingest.out, "catalog file to write")
      ->required();
  ingest_cmd->add_option("--host", ingest.host,
                         "resolver authority for minted identifiers");

  ServeOptions serve;
  CLI::App *serve_cmd =
      app.add_subcommand("serve", "Serve the HTTP resolver");
  serve_cmd->add_option("--catalog", serve.catalog, "catalog file")
      ->required();
  serve_cmd->add_option("--bind", serve.bind,
                        "addr:port to listen on (port 0 picks one)");
  serve_cmd->add_option("--host", serve.host,
                        "override the catalog's resolver authority");
  serve_cmd->add_option("--posts", serve.posts,
                        "post dump enabling post_id context lookups");

  WikifyOptions wikify;
  CLI::App *wikify_cmd =
      app.add_subcommand("wikify", "Extract and link mentions in posts");
  wikify_cmd->add_option("--catalog", wikify.catalog, "catalog file")
      ->required();
  wikify_cmd->add_option("--posts", wikify.posts, "JSON Lines post dump")
      ->required();
  wikify_cmd->add_option("--out", wikify.out, "annotated JSON Lines output")
      ->required();
  wikify_cmd->add_option("--host", wikify.host,
                         "override the catalog's resolver authority");
  wikify_cmd->add_flag("--link-now", wikify.link_now,
                       "resolve each mention against the catalog");

  EvalOptions eval;
  CLI::App *eval_cmd =
      app.add_subcommand("eval", "Score the wikifier against gold files");
  eval_cmd->add_option("--catalog", eval.catalog, "catalog file")
      ->required();
  eval_cmd->add_option("--posts", eval.posts, "JSON Lines post dump")
      ->required();
  eval_cmd->add_option("--gold-mentions", eval.gold_mentions,
                       "gold mention spans per annotator")->required();
  eval_cmd->add_option("--gold-links", eval.gold_links,
                       "gold span-to-URL links");
  eval_cmd->add_option("--report", eval.report, "report JSON to write")
      ->required();
  eval_cmd->add_option("--context", eval.context,
                       "gold protocol label recorded in the report");

  DemoOptions demo;
  CLI::App *demo_cmd =
      app.add_subcommand("demo", "Identifier chain walkthrough");
  demo_cmd->add_flag("--json", demo.json,
                     "emit the trace as one JSON object");
  demo_cmd->add_option("--fixture", demo.fixture,
                       "replace the bundled one-resource fixture");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (ingest_cmd->parsed()) return RunIngest(ingest);
    if (serve_cmd->parsed()) return RunServe(serve);
    if (wikify_cmd->parsed()) return RunWikify(wikify);
    if (eval_cmd->parsed()) return RunEval(eval);
    if (demo_cmd->parsed()) return RunDemoCommand(demo);
  } catch (const muir::Error &err) {
    std::cerr << "error: " << err.what() << "\n";
    return kInputError;
  } catch (const std::exception &err) {
    std::cerr << "error: " << err.what() << "\n";
    return kInputError;
  }
  return kVerificationFailure;  // unreachable with a required subcommand
}
