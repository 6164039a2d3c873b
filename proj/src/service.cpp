#include "essencery/service.hpp"

#include <httplib.h>

#include <iostream>

#include "essencery/essfmt.hpp"
#include "essencery/json_codec.hpp"
#include "essencery/render.hpp"

#ifndef ESSENCERY_WEB_DIR
#define ESSENCERY_WEB_DIR "web"
#endif

namespace essencery {

using nlohmann::json;

std::filesystem::path default_ui_dir() { return ESSENCERY_WEB_DIR; }

namespace {

constexpr const char* kJson = "application/json; charset=utf-8";

std::string dump(const json& value) { return value.dump(-1, ' ', false, json::error_handler_t::replace); }

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(dump(body), kJson);
}

void send_error(httplib::Response& res, int status, std::string message) {
  send_json(res, status, {{"error", std::move(message)}});
}

// Accepts `"3"`, `W/"3"` and bare `3`.
std::optional<std::uint64_t> parse_if_match(std::string value) {
  if (value.starts_with("W/")) value.erase(0, 2);
  if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
  if (value.empty() || value.size() > 19) return std::nullopt;
  std::uint64_t n = 0;
  for (const char c : value) {
    if (c < '0' || c > '9') return std::nullopt;
    n = n * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return n;
}

std::string etag(std::uint64_t revision) { return "\"" + std::to_string(revision) + "\""; }

}  // namespace

struct Service::Impl {
  StoreConfig config;
  Kernel kernel;
  render::RenderTheme theme;
  GraphStore store;
  Logger log;
  httplib::Server server;
  int bound_port = -1;

  Impl(StoreConfig c, Kernel k, Logger l)
      : config(std::move(c)),
        kernel(std::move(k)),
        theme(render::RenderTheme::from_kernel(kernel)),
        store(config.data_dir),
        log(l ? std::move(l) : Logger([](std::string_view m) { std::cerr << m << '\n'; })) {
    if (config.ui_dir.empty()) config.ui_dir = default_ui_dir();
    // httplib also sets SO_REUSEPORT, which would let a second server share
    // the port silently instead of failing to bind.
    server.set_socket_options([](socket_t sock) {
      int yes = 1;
      ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
    });
    routes();
  }

  std::optional<Graph> load_or_respond(const std::string& id, httplib::Response& res) {
    try {
      auto g = store.load(id);
      if (!g) send_error(res, 404, "no graph '" + id + "'");
      return g;
    } catch (const std::exception& e) {
      log("graph " + id + " is unreadable: " + e.what());
      send_error(res, 500, "stored graph '" + id + "' is unreadable");
      return std::nullopt;
    }
  }

  void routes() {
    server.Get("/api/graphs", [this](const httplib::Request&, httplib::Response& res) {
      std::vector<std::string> warnings;
      const auto summaries = store.list(&warnings);
      for (const auto& w : warnings) log("skipping " + w);
      json out = json::array();
      for (const auto& s : summaries) {
        out.push_back({{"id", s.id}, {"title", s.title}, {"revision", s.revision}, {"modified", format_utc(s.modified)}});
      }
      send_json(res, 200, out);
    });

    server.Post("/api/graphs", [this](const httplib::Request& req, httplib::Response& res) {
      json body;
      try {
        body = json::parse(req.body);
      } catch (const json::exception&) {
        return send_error(res, 400, "request body is not JSON");
      }
      if (!body.is_object() || !body.contains("title") || !body["title"].is_string()) {
        return send_error(res, 422, "body must be {\"title\": string}");
      }
      const Graph g = store.create(body["title"].get<std::string>());
      res.set_header("Location", "/api/graphs/" + g.id);
      res.set_header("ETag", etag(g.revision));
      send_json(res, 201, {{"id", g.id}, {"title", g.title}, {"revision", g.revision}});
    });

    server.Get(R"(/api/graphs/([a-z0-9]+)\.ess)", [this](const httplib::Request& req, httplib::Response& res) {
      const auto g = load_or_respond(req.matches[1], res);
      if (!g) return;
      res.set_header("ETag", etag(g->revision));
      res.set_content(essfmt::print(*g), "text/plain; charset=utf-8");
    });

    server.Get(R"(/api/graphs/([a-z0-9]+)/svg)", [this](const httplib::Request& req, httplib::Response& res) {
      const auto g = load_or_respond(req.matches[1], res);
      if (!g) return;
      res.set_content(render::render_graph_svg(*g, theme), "image/svg+xml; charset=utf-8");
    });

    server.Get(R"(/api/graphs/([a-z0-9]+))", [this](const httplib::Request& req, httplib::Response& res) {
      const auto g = load_or_respond(req.matches[1], res);
      if (!g) return;
      res.set_header("ETag", etag(g->revision));
      send_json(res, 200, json_codec::to_json(*g));
    });

    server.Put(R"(/api/graphs/([a-z0-9]+))", [this](const httplib::Request& req, httplib::Response& res) {
      const std::string id = req.matches[1];
      if (!req.has_header("If-Match")) return send_error(res, 428, "If-Match header with the base revision is required");
      const auto expected = parse_if_match(req.get_header_value("If-Match"));
      if (!expected) return send_error(res, 400, "If-Match must carry a revision number");
      json body;
      try {
        body = json::parse(req.body);
      } catch (const json::exception&) {
        return send_error(res, 400, "request body is not JSON");
      }
      Graph graph;
      try {
        graph = json_codec::graph_from_json(body);
      } catch (const json_codec::JsonShapeError& e) {
        json details = json::array();
        details.push_back({{"code", "shape"}, {"severity", "error"}, {"subject", "graph"}, {"message", e.what()}});
        return send_json(res, 422, {{"error", "invariant violation"}, {"details", details}});
      }
      if (const auto violations = structural_violations(graph); !violations.empty()) {
        json details = json::array();
        for (const auto& v : violations) {
          details.push_back({{"code", "invariant"}, {"severity", "error"}, {"subject", v.subject}, {"message", v.message}});
        }
        return send_json(res, 422, {{"error", "invariant violation"}, {"details", details}});
      }
      GraphStore::SaveResult result;
      try {
        result = store.save(id, *expected, std::move(graph));
      } catch (const ParseError& e) {
        log("graph " + id + " is unreadable: " + e.what());
        return send_error(res, 500, "stored graph '" + id + "' is unreadable");
      }
      switch (result.status) {
        case GraphStore::SaveStatus::NotFound:
          return send_error(res, 404, "no graph '" + id + "'");
        case GraphStore::SaveStatus::Stale:
          res.set_header("ETag", etag(result.revision));
          return send_json(res, 409, {{"error", "stale revision"}, {"revision", result.revision}});
        case GraphStore::SaveStatus::Saved:
          res.set_header("ETag", etag(result.revision));
          return send_json(res, 200, {{"revision", result.revision}});
      }
    });

    server.Delete(R"(/api/graphs/([a-z0-9]+))", [this](const httplib::Request& req, httplib::Response& res) {
      if (store.remove(req.matches[1])) {
        res.status = 204;
      } else {
        send_error(res, 404, "no graph '" + std::string(req.matches[1]) + "'");
      }
    });

    server.Get("/api/kernel", [this](const httplib::Request&, httplib::Response& res) {
      send_json(res, 200, json_codec::to_json(kernel));
    });

    server.Get("/", [this](const httplib::Request&, httplib::Response& res) {
      try {
        std::ifstream in(config.ui_dir / "index.html", std::ios::binary);
        if (!in) return send_error(res, 404, "editor UI is not installed");
        std::string html((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        res.set_content(html, "text/html; charset=utf-8");
      } catch (const std::exception& e) {
        send_error(res, 500, e.what());
      }
    });
    server.set_mount_point("/assets", (config.ui_dir / "assets").string());

    server.set_exception_handler([this](const httplib::Request& req, httplib::Response& res, std::exception_ptr ep) {
      try {
        std::rethrow_exception(ep);
      } catch (const std::exception& e) {
        log(req.method + " " + req.path + " failed: " + e.what());
      } catch (...) {
        log(req.method + " " + req.path + " failed");
      }
      send_error(res, 500, "internal error");
    });
  }
};

Service::Service(StoreConfig config, Kernel kernel, Logger log)
    : impl_(std::make_unique<Impl>(std::move(config), std::move(kernel), std::move(log))) {}

Service::~Service() { stop(); }

int Service::bind() {
  auto& cfg = impl_->config;
  if (cfg.port == 0) {
    impl_->bound_port = impl_->server.bind_to_any_port(cfg.host);
  } else {
    impl_->bound_port = impl_->server.bind_to_port(cfg.host, cfg.port) ? cfg.port : -1;
  }
  if (impl_->bound_port < 0) {
    throw ServiceError("cannot listen on " + cfg.host + ":" + std::to_string(cfg.port) + " (port in use?)");
  }
  return impl_->bound_port;
}

void Service::listen() {
  if (impl_->bound_port < 0) throw ServiceError("listen() before bind()");
  impl_->server.listen_after_bind();
}

void Service::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

GraphStore& Service::store() { return impl_->store; }
const Kernel& Service::kernel() const { return impl_->kernel; }

}  // namespace essencery
