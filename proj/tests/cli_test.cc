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
// End-to-end checks of the muir binary: every subcommand is exercised
// through a real process, including the serve loop with its signal
// handling. MUIR_BIN is injected by the build.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "muir/catalog.h"
#include "muir/demo.h"

namespace muir {
namespace {

const char kBin[] = MUIR_BIN;

struct CommandResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

CommandResult RunCommand(const std::string &cmd) {
  CommandResult result;
  std::string full = cmd + " 2>&1";
  FILE *pipe = popen(full.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) {
    result.output.append(buf, n);
  }
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string Scratch(const std::string &name) {
  std::filesystem::path dir =
      std::filesystem::path("cli_scratch") / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

void WriteFile(const std::string &path, const std::string &content) {
  std::ofstream out(path);
  REQUIRE(out.good());
  out << content;
}

std::string ReadFile(const std::string &path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string MakeCatalogFile(const std::string &dir) {
  std::string resources = dir + "/resources.jsonl";
  std::string catalog = dir + "/catalog.json";
  WriteFile(resources, DemoFixtureJsonl());
  CommandResult res = RunCommand(std::string(kBin) + " ingest --resources " +
                                 resources + " --out " + catalog);
  REQUIRE(res.exit_code == 0);
  return catalog;
}

const char kPostLine[] =
    R"({"post_id": "cli-post", "body": "See lecture 2.5 now.", )"
    R"("platform": "Coursera", "course": "accounting-analytics", )"
    R"("session_ms": 1480320000000, "instructors": ["Brian J Bushee"], )"
    R"("forum": "Week 2", "thread_id": null})"
    "\n";

TEST_CASE("ingest writes a loadable catalog and reports a summary") {
  std::string dir = Scratch("ingest");
  std::string resources = dir + "/resources.jsonl";
  WriteFile(resources, DemoFixtureJsonl());

  CommandResult res =
      RunCommand(std::string(kBin) + " ingest --resources " + resources +
                 " --out " + dir + "/catalog.json");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("ingested 1 resources for www.example.org") !=
        std::string::npos);

  std::ifstream in(dir + "/catalog.json");
  Catalog catalog = Catalog::Load(in);
  CHECK(catalog.size() == 1);
  CHECK(catalog.host() == "www.example.org");

  CommandResult rehosted =
      RunCommand(std::string(kBin) + " ingest --resources " + resources +
                 " --out " + dir + "/other.json --host muir.example.net");
  CHECK(rehosted.exit_code == 0);
  std::ifstream other_in(dir + "/other.json");
  CHECK(Catalog::Load(other_in).host() == "muir.example.net");
}

TEST_CASE("ingest failures are input errors") {
  std::string dir = Scratch("ingest-bad");
  WriteFile(dir + "/bad.jsonl", "{\"platform\": []}\n");
  CommandResult res =
      RunCommand(std::string(kBin) + " ingest --resources " + dir +
                 "/bad.jsonl --out " + dir + "/catalog.json");
  CHECK(res.exit_code == 2);
  CHECK(res.output.find("error:") != std::string::npos);
  CHECK(res.output.find("line 1") != std::string::npos);

  CommandResult missing =
      RunCommand(std::string(kBin) + " ingest --resources " + dir +
                 "/absent.jsonl --out " + dir + "/catalog.json");
  CHECK(missing.exit_code == 2);
}

TEST_CASE("wikify annotates a post dump") {
  std::string dir = Scratch("wikify");
  std::string catalog = MakeCatalogFile(dir);
  WriteFile(dir + "/posts.jsonl", kPostLine);

  CommandResult res = RunCommand(
      std::string(kBin) + " wikify --catalog " + catalog + " --posts " + dir +
      "/posts.jsonl --out " + dir + "/annotated.jsonl --link-now");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("wikified 1 posts: 1 mentions, 1 resolved") !=
        std::string::npos);

  nlohmann::json line = nlohmann::json::parse(ReadFile(dir +
                                                       "/annotated.jsonl"));
  CHECK(line["post_id"] == "cli-post");
  REQUIRE(line["mentions"].size() == 1);
  CHECK(line["mentions"][0]["surface"] == "lecture 2.5");
  CHECK(line["mentions"][0]["short_form"] == DemoFormShort());
  CHECK(line["mentions"][0]["resolved_url"] == DemoFormUrl());
  CHECK(line["mentions"][0]["ambiguous"] == false);

  CommandResult unlinked = RunCommand(
      std::string(kBin) + " wikify --catalog " + catalog + " --posts " + dir +
      "/posts.jsonl --out " + dir + "/plain.jsonl");
  CHECK(unlinked.exit_code == 0);
  nlohmann::json plain = nlohmann::json::parse(ReadFile(dir +
                                                        "/plain.jsonl"));
  CHECK(plain["mentions"][0]["resolved_url"].is_null());
}

TEST_CASE("eval writes a deterministic report") {
  std::string dir = Scratch("eval");
  std::string catalog = MakeCatalogFile(dir);
  WriteFile(dir + "/posts.jsonl", kPostLine);
  WriteFile(dir + "/gold_mentions.json",
            R"({"annotator_1": {"cli-post": [[4, 15]]},)"
            R"( "annotator_2": {"cli-post": []}})");
  WriteFile(dir + "/gold_links.json",
            std::string(R"({"cli-post": [{"start": 4, "end": 15, "url": ")") +
                DemoFormUrl() + R"("}]})");

  std::string cmd = std::string(kBin) + " eval --catalog " + catalog +
                    " --posts " + dir + "/posts.jsonl --gold-mentions " +
                    dir + "/gold_mentions.json --gold-links " + dir +
                    "/gold_links.json --report " + dir +
                    "/report.json --context mention-only";
  CommandResult res = RunCommand(cmd);
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("coverage annotator_1: 1/1") != std::string::npos);
  CHECK(res.output.find("resolution Total: 1/1 (100.0%)") !=
        std::string::npos);

  std::string first = ReadFile(dir + "/report.json");
  nlohmann::json report = nlohmann::json::parse(first);
  CHECK(report["context"] == "mention-only");
  REQUIRE(report["coverage"].size() == 3);
  CHECK(report["coverage"][0]["label"] == "annotator_1");
  CHECK(report["coverage"][0]["posts_with_mentions_pct"] == "100.0");
  CHECK(report["coverage"][1]["posts_with_mentions"] == 0);
  CHECK(report["coverage"][2]["label"] == "union");
  REQUIRE(report["resolution"].size() == 2);
  CHECK(report["resolution"][0]["type"] == "Videos");
  CHECK(report["resolution"][0]["precision_pct"] == "100.0");
  CHECK(report["resolution"][1]["type"] == "Total");

  CHECK(RunCommand(cmd).exit_code == 0);
  CHECK(ReadFile(dir + "/report.json") == first);
}

TEST_CASE("eval with gold for an unknown post is an input error") {
  std::string dir = Scratch("eval-bad");
  std::string catalog = MakeCatalogFile(dir);
  WriteFile(dir + "/posts.jsonl", kPostLine);
  WriteFile(dir + "/gold_mentions.json",
            R"({"annotator_1": {"ghost": [[0, 4]]}})");
  CommandResult res = RunCommand(
      std::string(kBin) + " eval --catalog " + catalog + " --posts " + dir +
      "/posts.jsonl --gold-mentions " + dir +
      "/gold_mentions.json --report " + dir + "/report.json");
  CHECK(res.exit_code == 2);
  CHECK(res.output.find("ghost") != std::string::npos);
}

TEST_CASE("demo subcommand exit codes") {
  CommandResult ok = RunCommand(std::string(kBin) + " demo");
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("chain: ok") != std::string::npos);

  CommandResult json = RunCommand(std::string(kBin) + " demo --json");
  CHECK(json.exit_code == 0);
  nlohmann::json doc = nlohmann::json::parse(json.output);
  CHECK(doc["post_id"] == "demo-post");

  std::string dir = Scratch("demo");
  std::string corrupted = DemoFixtureJsonl();
  std::size_t pos = corrupted.find("red-flags");
  REQUIRE(pos != std::string::npos);
  corrupted.replace(pos, 9, "red-flagz");
  WriteFile(dir + "/fixture.jsonl", corrupted);
  CommandResult bad = RunCommand(std::string(kBin) + " demo --fixture " +
                                 dir + "/fixture.jsonl");
  CHECK(bad.exit_code == 1);

  CommandResult absent = RunCommand(std::string(kBin) +
                                    " demo --fixture /does/not/exist.jsonl");
  CHECK(absent.exit_code == 2);
}

TEST_CASE("usage errors exit with the input-error code") {
  CHECK(RunCommand(std::string(kBin) + " frobnicate").exit_code == 2);
  CHECK(RunCommand(std::string(kBin) + " ingest").exit_code == 2);
  CHECK(RunCommand(std::string(kBin)).exit_code == 2);
  CHECK(RunCommand(std::string(kBin) + " --help").exit_code == 0);
}

TEST_CASE("serve answers over a socket, reloads on SIGHUP, stops on "
          "SIGTERM") {
  std::string dir = Scratch("serve");
  std::string catalog = MakeCatalogFile(dir);

  int fds[2];
  REQUIRE(pipe(fds) == 0);
  pid_t pid = fork();
  REQUIRE(pid >= 0);
  if (pid == 0) {
    dup2(fds[1], STDOUT_FILENO);
    close(fds[0]);
    close(fds[1]);
    execl(kBin, kBin, "serve", "--catalog", catalog.c_str(), "--bind",
          "127.0.0.1:0", static_cast<char *>(nullptr));
    _exit(127);
  }
  close(fds[1]);

  // First stdout line announces the bound port.
  std::string banner;
  {
    FILE *out = fdopen(fds[0], "r");
    REQUIRE(out != nullptr);
    char line[512];
    REQUIRE(fgets(line, sizeof line, out) != nullptr);
    banner = line;
    // Leave the stream open so the child never blocks on a closed pipe.
  }
  CAPTURE(banner);
  std::size_t colon = banner.rfind("127.0.0.1:");
  REQUIRE(colon != std::string::npos);
  int port = std::atoi(banner.c_str() + colon + 10);
  REQUIRE(port > 0);

  httplib::Client client("127.0.0.1", port);
  client.set_follow_location(false);
  client.set_connection_timeout(2);

  auto health = client.Get("/healthz");
  REQUIRE(health);
  CHECK(health->status == 200);
  CHECK(health->body == "ok");

  const char kTarget[] =
      "/accounting-analytics/Week%202/lecture/2-5"
      "?platform=Coursera&session_ms=1480320000000";
  auto redirect = client.Get(kTarget);
  REQUIRE(redirect);
  CHECK(redirect->status == 302);
  CHECK(redirect->get_header_value("Location") == DemoFormUrl());

  // Swap the catalog file for an empty one and reload in place.
  {
    std::istringstream empty_in("");
    Catalog empty = Catalog::Ingest(empty_in, "www.example.org");
    std::ofstream out(catalog);
    empty.Save(out);
  }
  REQUIRE(kill(pid, SIGHUP) == 0);
  bool reloaded = false;
  for (int i = 0; i < 50 && !reloaded; ++i) {
    std::this_thread::sleep_for(std::chrono::milliseconds(100));
    auto after = client.Get(kTarget);
    if (after && after->status == 404) reloaded = true;
  }
  CHECK(reloaded);

  REQUIRE(kill(pid, SIGTERM) == 0);
  int status = 0;
  pid_t waited = 0;
  for (int i = 0; i < 50; ++i) {
    waited = waitpid(pid, &status, WNOHANG);
    if (waited == pid) break;
    std::this_thread::sleep_for(std::chrono::milliseconds(100));
  }
  if (waited != pid) {
    kill(pid, SIGKILL);
    waitpid(pid, &status, 0);
    FAIL("serve did not exit after SIGTERM");
  }
  CHECK(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 0);
}

}  // namespace
}  // namespace muir
