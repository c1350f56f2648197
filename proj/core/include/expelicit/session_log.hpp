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
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace expelicit {

inline constexpr std::string_view kLogFormat = "expelicit-session-log";
inline constexpr int kLogVersion = 1;

// Append-only record stream for one respondent. Serialized as one compact
// JSON object per line; the first record is the versioned header carrying
// the run configuration.
class SessionLog {
 public:
  using Sink = std::function<void(const nlohmann::json&)>;

  void append(nlohmann::json record);
  // Called with every record appended after installation.
  void set_sink(Sink sink) { sink_ = std::move(sink); }

  const std::vector<nlohmann::json>& records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }

  // Throws kLogFormat when the log has no header.
  const nlohmann::json& header() const;
  // Records of the given "type", in order.
  std::vector<nlohmann::json> of_type(std::string_view type) const;

  std::string to_jsonl() const;
  // Throws kLogFormat with the 1-based line number of the first bad line.
  static SessionLog parse(std::string_view text);

  static SessionLog load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

  // Copy with every "ts" field blanked, for determinism comparisons.
  SessionLog normalized() const;

 private:
  std::vector<nlohmann::json> records_;
  Sink sink_;
};

// Serialize a single record as it appears on one log line.
std::string to_log_line(const nlohmann::json& record);

}  // namespace expelicit
