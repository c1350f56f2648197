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

#include "expelicit/session_log.hpp"

#include <fstream>
#include <sstream>

#include "expelicit/error.hpp"

namespace expelicit {

using nlohmann::json;

void SessionLog::append(json record) {
  records_.push_back(std::move(record));
  if (sink_) sink_(records_.back());
}

const json& SessionLog::header() const {
  if (records_.empty() || records_.front().value("type", "") != "header") {
    throw Error(ErrorCode::kLogFormat, "log has no header record");
  }
  return records_.front();
}

std::vector<json> SessionLog::of_type(std::string_view type) const {
  std::vector<json> out;
  for (const auto& r : records_) {
    if (r.value("type", "") == type) out.push_back(r);
  }
  return out;
}

std::string to_log_line(const json& record) { return record.dump() + "\n"; }

std::string SessionLog::to_jsonl() const {
  std::string out;
  for (const auto& r : records_) out += to_log_line(r);
  return out;
}

SessionLog SessionLog::parse(std::string_view text) {
  SessionLog log;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::kLogFormat,
                  "line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!record.is_object() || !record.contains("type")) {
      throw Error(ErrorCode::kLogFormat,
                  "line " + std::to_string(line_no) + ": record without a type");
    }
    log.records_.push_back(std::move(record));
  }
  const json& h = log.header();
  if (h.value("format", "") != kLogFormat || h.value("version", 0) != kLogVersion) {
    throw Error(ErrorCode::kLogFormat, "line 1: unsupported log format or version");
  }
  return log;
}

SessionLog SessionLog::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kLogFormat, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse(ss.str());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void SessionLog::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kLogFormat, "cannot write " + path.string());
  out << to_jsonl();
}

SessionLog SessionLog::normalized() const {
  SessionLog out;
  out.records_ = records_;
  for (auto& r : out.records_) {
    if (r.contains("ts")) r["ts"] = "";
  }
  return out;
}

}  // namespace expelicit
