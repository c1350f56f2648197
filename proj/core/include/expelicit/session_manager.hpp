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

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "expelicit/elicitation_run.hpp"
#include "expelicit/study_config.hpp"

namespace expelicit {

// JSON views of run state shared by the HTTP API and the CLI.
nlohmann::json step_to_json(const ElicitationRun& run, const Step& step);
nlohmann::json bounds_to_json(const ElicitationRun& run);
nlohmann::json session_summary(const ElicitationRun& run);

// Parses a {"kind": "task" | "preference", ...} response payload.
std::variant<TaskCompletion, Answer> parse_response_payload(const nlohmann::json& payload);

// Owns live sessions for one study. Calls on different sessions run in
// parallel; calls on the same session are serialized. With a log directory,
// every record is appended to <dir>/<id>.jsonl as it is produced and
// existing logs are replayed on construction.
class SessionManager {
 public:
  explicit SessionManager(StudyConfig study,
                          std::optional<std::filesystem::path> log_dir = std::nullopt,
                          ElicitationRun::Clock clock = ElicitationRun::utc_clock());

  const StudyConfig& study() const noexcept { return study_; }

  // Request: {"id"?, "protocol"?, "seed"?, "study"?}. Throws
  // kDuplicateSession for a taken id.
  nlohmann::json create(const nlohmann::json& request);
  nlohmann::json next_step(const std::string& id);
  // Resubmitting a payload with an already used "token" returns the
  // original reply without touching the session.
  nlohmann::json submit(const std::string& id, const nlohmann::json& payload);
  nlohmann::json bounds(const std::string& id) const;
  nlohmann::json summary(const std::string& id) const;
  std::string log_jsonl(const std::string& id) const;
  nlohmann::json suspend(const std::string& id);
  nlohmann::json resume(const std::string& id);

  std::vector<std::string> ids() const;
  std::size_t size() const;

 private:
  struct Entry {
    explicit Entry(ElicitationRun r) : run(std::move(r)) {}
    mutable std::mutex mutex;
    ElicitationRun run;
    std::map<std::string, nlohmann::json> replies;
  };

  std::shared_ptr<Entry> find(const std::string& id) const;
  void attach_sink(Entry& entry);
  void load_existing();

  StudyConfig study_;
  std::optional<std::filesystem::path> log_dir_;
  ElicitationRun::Clock clock_;
  mutable std::shared_mutex map_mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::uint64_t next_auto_id_ = 1;
};

}  // namespace expelicit
