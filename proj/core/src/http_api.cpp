// Copyright 2026 The Expelicit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "expelicit/http_api.hpp"

#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace expelicit {

using json = nlohmann::json;

int http_status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownSession:
      return 404;
    case ErrorCode::kDuplicateSession:
      return 409;
    case ErrorCode::kExhausted:
      return 410;
    case ErrorCode::kProtocolViolation:
      return 422;
    case ErrorCode::kSuspended:
      return 423;
    case ErrorCode::kReplayMismatch:
    case ErrorCode::kLogFormat:
      return 500;
    default:
      return 400;
  }
}

struct HttpServer::Impl {
  SessionManager& manager;
  httplib::Server server;
  std::thread thread;
  bool bound = false;

  explicit Impl(SessionManager& m) : manager(m) {}
};

namespace {

void reply_json(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

template <typename F>
httplib::Server::Handler guarded(F f) {
  return [f](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const Error& e) {
      reply_json(res, {{"error", std::string(to_string(e.code()))}, {"message", e.what()}},
                 http_status_for(e.code()));
    } catch (const json::exception& e) {
      reply_json(res, {{"error", "bad-request"}, {"message", e.what()}}, 400);
    }
  };
}

json body_json(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  return json::parse(req.body);
}

}  // namespace

HttpServer::HttpServer(SessionManager& manager, std::optional<std::filesystem::path> ui_dir)
    : impl_(std::make_unique<Impl>(manager)) {
  auto& s = impl_->server;
  auto& m = impl_->manager;

  s.Post("/api/sessions", guarded([&m](const httplib::Request& req, httplib::Response& res) {
           reply_json(res, m.create(body_json(req)), 201);
         }));
  s.Get("/api/sessions", guarded([&m](const httplib::Request&, httplib::Response& res) {
          json list = json::array();
          for (const auto& id : m.ids()) list.push_back(m.summary(id));
          reply_json(res, list);
        }));
  s.Get("/api/sessions/:id", guarded([&m](const httplib::Request& req, httplib::Response& res) {
          reply_json(res, m.summary(req.path_params.at("id")));
        }));
  s.Get("/api/sessions/:id/next",
        guarded([&m](const httplib::Request& req, httplib::Response& res) {
          reply_json(res, m.next_step(req.path_params.at("id")));
        }));
  s.Post("/api/sessions/:id/response",
         guarded([&m](const httplib::Request& req, httplib::Response& res) {
           reply_json(res, m.submit(req.path_params.at("id"), body_json(req)));
         }));
  s.Get("/api/sessions/:id/bounds",
        guarded([&m](const httplib::Request& req, httplib::Response& res) {
          reply_json(res, m.bounds(req.path_params.at("id")));
        }));
  s.Get("/api/sessions/:id/log", guarded([&m](const httplib::Request& req, httplib::Response& res) {
          res.set_content(m.log_jsonl(req.path_params.at("id")), "application/x-ndjson");
        }));
  s.Post("/api/sessions/:id/suspend",
         guarded([&m](const httplib::Request& req, httplib::Response& res) {
           reply_json(res, m.suspend(req.path_params.at("id")));
         }));
  s.Post("/api/sessions/:id/resume",
         guarded([&m](const httplib::Request& req, httplib::Response& res) {
           reply_json(res, m.resume(req.path_params.at("id")));
         }));
  s.Get("/api/config", guarded([&m](const httplib::Request&, httplib::Response& res) {
          res.set_content(render_study_config(m.study()), "application/yaml");
        }));
  if (ui_dir) s.set_mount_point("/", ui_dir->string());
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
  } else if (!impl_->server.bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound < 0) {
    throw Error(ErrorCode::kInvalidConfig, "cannot bind " + host + ":" + std::to_string(port));
  }
  impl_->bound = true;
  return bound;
}

void HttpServer::serve() {
  if (!impl_->bound) throw Error(ErrorCode::kInvalidConfig, "server is not bound");
  impl_->server.listen_after_bind();
}

void HttpServer::start() {
  if (!impl_->bound) throw Error(ErrorCode::kInvalidConfig, "server is not bound");
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

void HttpServer::stop() {
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace expelicit
