#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <httplib.h>
#include <json.hpp>
#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <set>
#include <thread>

#include "essencery/essfmt.hpp"
#include "essencery/json_codec.hpp"
#include "essencery/service.hpp"
#include "support/support.hpp"

using namespace essencery;
using nlohmann::json;
namespace fs = std::filesystem;
using essencery::testing::read_text;

namespace {

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("service-test-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// A service on an ephemeral port with a client pointed at it.
struct Running {
  fs::path dir;
  std::vector<std::string> log_lines;
  std::mutex log_mutex;
  std::unique_ptr<Service> service;
  std::thread thread;
  int port = 0;

  explicit Running(const std::string& name, const std::function<void(const fs::path&)>& seed = {})
      : dir(scratch_dir(name)) {
    if (seed) seed(dir);
    StoreConfig config;
    config.data_dir = dir;
    config.port = 0;
    service = std::make_unique<Service>(config, load_standard_kernel(), [this](std::string_view line) {
      std::lock_guard lock(log_mutex);
      log_lines.emplace_back(line);
    });
    port = service->bind();
    thread = std::thread([this] { service->listen(); });
    httplib::Client probe("127.0.0.1", port);
    for (int i = 0; i < 200 && !probe.Get("/api/kernel"); ++i) std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }

  ~Running() {
    service->stop();
    thread.join();
    fs::remove_all(dir);
  }

  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port);
    c.set_read_timeout(10, 0);
    return c;
  }
};

json body_of(const httplib::Result& r) { return json::parse(r->body); }

std::string create(httplib::Client& c, const std::string& title) {
  const auto r = c.Post("/api/graphs", json{{"title", title}}.dump(), "application/json");
  REQUIRE(r);
  REQUIRE(r->status == 201);
  return body_of(r)["id"];
}

httplib::Result put(httplib::Client& c, const std::string& id, const json& graph, std::uint64_t base) {
  return c.Put("/api/graphs/" + id, httplib::Headers{{"If-Match", "\"" + std::to_string(base) + "\""}}, graph.dump(),
               "application/json");
}

}  // namespace

TEST_CASE("document lifecycle over HTTP") {
  Running r("lifecycle");
  auto c = r.client();

  const auto created = c.Post("/api/graphs", R"({"title":"Sprint 1 – työ"})", "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  const auto meta = body_of(created);
  const std::string id = meta["id"];
  CHECK(id.size() == 8);
  CHECK(id.find_first_not_of("0123456789abcdef") == std::string::npos);
  CHECK(meta["revision"] == 0);
  CHECK(created->get_header_value("Location") == "/api/graphs/" + id);

  auto got = c.Get("/api/graphs/" + id);
  REQUIRE(got);
  CHECK(got->status == 200);
  CHECK(got->get_header_value("ETag") == "\"0\"");
  json graph = body_of(got);
  CHECK(graph["title"] == "Sprint 1 – työ");

  graph["nodes"].push_back({{"id", "n1"}, {"kind", "alpha"}, {"name", "Työ"}, {"x", 10}, {"y", 20}, {"area", "endeavor"}});
  graph["bindings"].push_back({{"owner", "n1"}, {"target", "kernel.alpha.Work"}});
  auto saved = put(c, id, graph, 0);
  REQUIRE(saved);
  CHECK(saved->status == 200);
  CHECK(body_of(saved)["revision"] == 1);

  auto stale = put(c, id, graph, 0);
  REQUIRE(stale);
  CHECK(stale->status == 409);
  CHECK(body_of(stale)["revision"] == 1);

  auto text = c.Get("/api/graphs/" + id + ".ess");
  REQUIRE(text);
  CHECK(text->status == 200);
  CHECK(text->get_header_value("Content-Type") == "text/plain; charset=utf-8");
  const Graph parsed = essfmt::parse(text->body);
  CHECK(parsed.revision == 1);
  CHECK(parsed.nodes.at("n1").name == "Työ");
  CHECK(parsed.bindings.count("n1") == 1);

  auto svg = c.Get("/api/graphs/" + id + "/svg");
  REQUIRE(svg);
  CHECK(svg->status == 200);
  CHECK(svg->body.find("data-id=\"n1\"") != std::string::npos);

  auto index = c.Get("/api/graphs");
  REQUIRE(index);
  const auto listed = body_of(index);
  REQUIRE(listed.size() == 1);
  CHECK(listed[0]["id"] == id);
  CHECK(listed[0]["revision"] == 1);
  CHECK(listed[0]["modified"].get<std::string>().size() == 20);

  auto del = c.Delete("/api/graphs/" + id);
  REQUIRE(del);
  CHECK(del->status == 204);
  CHECK(c.Get("/api/graphs/" + id)->status == 404);
  CHECK(c.Get("/api/graphs/" + id + ".ess")->status == 404);
  CHECK(c.Delete("/api/graphs/" + id)->status == 404);
  CHECK(put(c, id, graph, 1)->status == 404);
  CHECK(body_of(c.Get("/api/graphs")).empty());
}

TEST_CASE("PUT preconditions and validation") {
  Running r("put");
  auto c = r.client();
  const auto id = create(c, "T");
  json graph = body_of(c.Get("/api/graphs/" + id));

  SUBCASE("missing If-Match") {
    const auto res = c.Put("/api/graphs/" + id, graph.dump(), "application/json");
    REQUIRE(res);
    CHECK(res->status == 428);
  }
  SUBCASE("malformed If-Match") {
    const auto res =
        c.Put("/api/graphs/" + id, httplib::Headers{{"If-Match", "\"abc\""}}, graph.dump(), "application/json");
    REQUIRE(res);
    CHECK(res->status == 400);
  }
  SUBCASE("body is not JSON") {
    const auto res = c.Put("/api/graphs/" + id, httplib::Headers{{"If-Match", "\"0\""}}, "{nope", "application/json");
    REQUIRE(res);
    CHECK(res->status == 400);
  }
  SUBCASE("dangling relation is an invariant violation") {
    graph["nodes"].push_back({{"id", "n1"}, {"kind", "activity"}, {"name", "A"}, {"x", 0}, {"y", 0}});
    graph["relations"].push_back({{"id", "r1"}, {"source", "n1"}, {"target", "n9"}, {"directed", true}});
    const auto res = put(c, id, graph, 0);
    REQUIRE(res);
    CHECK(res->status == 422);
    const auto body = body_of(res);
    CHECK(body["error"] == "invariant violation");
    REQUIRE(body["details"].size() == 1);
    CHECK(body["details"][0]["subject"] == "r1");
    CHECK(body["details"][0]["severity"] == "error");
    CHECK(body["details"][0]["message"].get<std::string>().find("n9") != std::string::npos);
  }
  SUBCASE("shape errors and out-of-range coordinates") {
    json bad = graph;
    bad["nodes"] = "not a list";
    CHECK(put(c, id, bad, 0)->status == 422);
    bad = graph;
    bad["nodes"].push_back({{"id", "n1"}, {"kind", "alpha"}, {"name", "A"}, {"x", 100001}, {"y", 0}});
    CHECK(put(c, id, bad, 0)->status == 422);
    bad = graph;
    bad["nodes"].push_back({{"id", "N1"}, {"kind", "alpha"}, {"name", "A"}, {"x", 0}, {"y", 0}});
    CHECK(put(c, id, bad, 0)->status == 422);
  }
  // Nothing above may have changed the stored document.
  const auto after = c.Get("/api/graphs/" + id);
  CHECK(after->get_header_value("ETag") == "\"0\"");
}

TEST_CASE("concurrent saves on one base revision: exactly one wins") {
  Running r("race");
  auto setup = r.client();
  const auto id = create(setup, "race");
  const json graph = body_of(setup.Get("/api/graphs/" + id));

  std::atomic<int> ok{0}, conflict{0};
  std::vector<std::thread> writers;
  for (int i = 0; i < 8; ++i) {
    writers.emplace_back([&, i] {
      auto c = r.client();
      json g = graph;
      g["title"] = "writer " + std::to_string(i);
      const auto res = put(c, id, g, 0);
      if (res && res->status == 200) ++ok;
      if (res && res->status == 409) ++conflict;
    });
  }
  for (auto& t : writers) t.join();
  CHECK(ok == 1);
  CHECK(conflict == 7);
  CHECK(body_of(setup.Get("/api/graphs/" + id))["revision"] == 1);
}

TEST_CASE("revisions observed by a client strictly increase") {
  Running r("monotonic");
  auto c = r.client();
  const auto id = create(c, "m");
  json graph = body_of(c.Get("/api/graphs/" + id));
  std::uint64_t last = 0;
  for (int i = 0; i < 20; ++i) {
    const auto res = put(c, id, graph, last);
    REQUIRE(res->status == 200);
    const std::uint64_t rev = body_of(res)["revision"];
    CHECK(rev == last + 1);
    last = rev;
  }
}

TEST_CASE("index lists exactly the parseable files and reports the rest") {
  const auto good = essfmt::print(essencery::testing::week_of_project_work());
  Running r("index", [&](const fs::path& dir) {
    std::ofstream(dir / "a1b2c3d4.ess") << good;
    std::ofstream(dir / "badbadba.ess") << "graph \"broken\" {";
    std::ofstream(dir / "mismatch.ess") << "graph \"M\" {\n  meta { id: \"other\"; revision: 0; }\n}\n";
    std::ofstream(dir / "notes.txt") << "not a graph";
  });
  auto c = r.client();
  const auto index = body_of(c.Get("/api/graphs"));
  REQUIRE(index.size() == 1);
  CHECK(index[0]["id"] == "a1b2c3d4");
  CHECK(index[0]["title"] == "Week 3 – fuzzy front end project");
  std::lock_guard lock(r.log_mutex);
  const auto mentions = [&](const std::string& name) {
    return std::any_of(r.log_lines.begin(), r.log_lines.end(),
                       [&](const std::string& l) { return l.find(name) != std::string::npos; });
  };
  CHECK(mentions("badbadba.ess"));
  CHECK(mentions("mismatch.ess"));
  CHECK_FALSE(mentions("a1b2c3d4.ess"));
}

TEST_CASE("kernel endpoint, static UI and unknown routes") {
  Running r("misc");
  auto c = r.client();
  const auto k = c.Get("/api/kernel");
  REQUIRE(k);
  CHECK(k->status == 200);
  const auto kernel = body_of(k);
  CHECK(kernel["areas"].size() == 3);
  CHECK(kernel["alphas"].size() == 7);
  CHECK(kernel["alphas"][0]["path"].get<std::string>().rfind("kernel.alpha.", 0) == 0);

  const auto index = c.Get("/");
  REQUIRE(index);
  CHECK(index->status == 200);
  CHECK(index->body.find("<html") != std::string::npos);
  CHECK(c.Get("/assets/style.css")->status == 200);

  CHECK(c.Get("/api/graphs/UPPER")->status == 404);
  CHECK(c.Get("/api/graphs/deadbeef")->status == 404);
  CHECK(c.Post("/api/graphs", "[]", "application/json")->status == 422);
  CHECK(c.Post("/api/graphs", "???", "application/json")->status == 400);
}

TEST_CASE("a save interrupted before rename leaves the previous file intact") {
  const auto dir = scratch_dir("crash");
  std::string id;
  std::string before;
  {
    GraphStore store(dir);
    const Graph g = store.create("crash test");
    id = g.id;
    Graph next = essencery::testing::week_of_project_work();
    REQUIRE(store.save(id, 0, next).status == GraphStore::SaveStatus::Saved);
    before = read_text(store.path_for(id));
  }

  const pid_t pid = fork();
  REQUIRE(pid >= 0);
  if (pid == 0) {
    GraphStore store(dir);
    store.set_before_rename_hook([](const fs::path&) { ::_exit(42); });
    Graph g = *store.load(id);
    g.title = "never lands";
    g.nodes.clear();
    g.relations.clear();
    g.cards.clear();
    g.bindings.clear();
    store.save(id, 1, g);
    ::_exit(0);
  }
  int status = 0;
  ::waitpid(pid, &status, 0);
  REQUIRE(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 42);

  std::size_t temps = 0;
  for (const auto& e : fs::directory_iterator(dir)) temps += e.path().filename().string().find(".tmp-") != std::string::npos;
  CHECK(temps == 1);
  CHECK(read_text(dir / (id + ".ess")) == before);
  const Graph survivor = essfmt::parse(before);
  CHECK(survivor.revision == 1);
  CHECK(survivor.nodes.size() == 12);

  // A restarted store lists only the real document and clears the leftover.
  GraphStore restarted(dir);
  std::vector<std::string> warnings;
  const auto listed = restarted.list(&warnings);
  REQUIRE(listed.size() == 1);
  CHECK(listed[0].id == id);
  CHECK(listed[0].revision == 1);
  temps = 0;
  for (const auto& e : fs::directory_iterator(dir)) temps += e.path().filename().string().find(".tmp-") != std::string::npos;
  CHECK(temps == 0);
  fs::remove_all(dir);
}

TEST_CASE("startup failures are reported") {
  SUBCASE("data directory does not exist") {
    StoreConfig config;
    config.data_dir = fs::temp_directory_path() / "service-test-missing-dir-xyz";
    fs::remove_all(config.data_dir);
    config.port = 0;
    CHECK_THROWS_AS(Service(config, load_standard_kernel()), StoreError);
  }
  SUBCASE("data directory is a file") {
    const auto dir = scratch_dir("file");
    std::ofstream(dir / "plain") << "x";
    StoreConfig config;
    config.data_dir = dir / "plain";
    CHECK_THROWS_AS(Service(config, load_standard_kernel()), StoreError);
    fs::remove_all(dir);
  }
  SUBCASE("port already in use") {
    Running first("port");
    StoreConfig config;
    config.data_dir = first.dir;
    config.port = first.port;
    Service second(config, load_standard_kernel(), [](std::string_view) {});
    CHECK_THROWS_AS(second.bind(), ServiceError);
  }
}
