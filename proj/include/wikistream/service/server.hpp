// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <iostream>
#include <memory>
#include <string>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "wikistream/core/error.hpp"
#include "wikistream/service/service.hpp"

namespace wikistream::service {

/// REST front end over a Service:
///   POST /events, POST /feedback, GET /explanations/{id}, GET /users/{id},
///   GET /metrics, GET /health.
class HttpServer {
 public:
  explicit HttpServer(Service& service) : service_(service) { routes(); }
  ~HttpServer() { stop(); }

  /// Binds (port 0 picks a free port) and serves on a background thread.
  int start(const std::string& host, int port) {
    const int bound = port == 0 ? server_.bind_to_any_port(host) : (server_.bind_to_port(host, port) ? port : -1);
    if (bound < 0) throw ConfigurationError("cannot bind " + host + ":" + std::to_string(port));
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
    return bound;
  }

  /// Serves on the calling thread until stop() is called elsewhere.
  void run(const std::string& host, int port) {
    if (!server_.listen(host, port)) throw ConfigurationError("cannot listen on " + host + ":" + std::to_string(port));
  }

  void stop() {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }

 private:
  static void reply(httplib::Response& res, int status, const nlohmann::json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
  }

  /// Maps domain errors to HTTP statuses.
  static void guarded(httplib::Response& res, const std::function<nlohmann::json()>& fn) {
    try {
      reply(res, 200, fn());
    } catch (const nlohmann::json::exception& e) {
      reply(res, 400, {{"error", e.what()}});
    } catch (const ParseError& e) {
      reply(res, 400, {{"error", e.what()}});
    } catch (const ValidationError& e) {
      reply(res, 400, {{"error", e.what()}});
    } catch (const NotFoundError& e) {
      reply(res, 404, {{"error", e.what()}});
    } catch (const ConflictError& e) {
      reply(res, 409, {{"error", e.what()}});
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      reply(res, 500, {{"error", e.what()}});
    }
  }

  void routes() {
    server_.Post("/events", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] { return service_.post_event(nlohmann::json::parse(req.body)); });
    });
    server_.Post("/feedback", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] { return service_.post_feedback(nlohmann::json::parse(req.body)); });
    });
    server_.Get(R"(/explanations/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] { return service_.explanation(req.matches[1]); });
    });
    server_.Get(R"(/users/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] { return service_.user(req.matches[1]); });
    });
    server_.Get("/metrics", [this](const httplib::Request&, httplib::Response& res) {
      guarded(res, [&] { return service_.metrics(); });
    });
    server_.Get("/health", [](const httplib::Request&, httplib::Response& res) { reply(res, 200, {{"status", "ok"}}); });
    // Browser clients on another origin (the dashboard) need CORS headers.
    server_.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                 {"Access-Control-Allow-Headers", "Content-Type"}});
    server_.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  }

  Service& service_;
  httplib::Server server_;
  std::thread thread_;
};

}  // namespace wikistream::service
