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

#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "expelicit/error.hpp"
#include "expelicit/session_manager.hpp"

namespace expelicit {

// HTTP status used for each error code.
int http_status_for(ErrorCode code);

// JSON API over a SessionManager:
//   POST /api/sessions                  create {"id"?, "protocol"?, "seed"?}
//   GET  /api/sessions                  list
//   GET  /api/sessions/{id}             summary
//   GET  /api/sessions/{id}/next        pending step
//   POST /api/sessions/{id}/response    task or preference payload
//   GET  /api/sessions/{id}/bounds      intervals and midpoints
//   GET  /api/sessions/{id}/log         session log (application/x-ndjson)
//   POST /api/sessions/{id}/suspend
//   POST /api/sessions/{id}/resume
//   GET  /api/config                    study config (YAML)
// Errors reply {"error": code, "message": text}. Static UI assets are served
// from `ui_dir` at "/" when given.
class HttpServer {
 public:
  explicit HttpServer(SessionManager& manager,
                      std::optional<std::filesystem::path> ui_dir = std::nullopt);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds to `port` (0 picks a free one) and returns the bound port.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  void serve();
  // serve() on a background thread; returns once the server accepts requests.
  void start();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace expelicit
