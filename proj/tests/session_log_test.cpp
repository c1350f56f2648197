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


#include <algorithm>
#include <filesystem>

#include <gtest/gtest.h>

#include "expelicit/error.hpp"
#include "expelicit/session_log.hpp"

namespace expelicit {
namespace {

using nlohmann::json;

json header() {
  return {{"type", "header"}, {"format", kLogFormat}, {"version", kLogVersion}, {"ts", "t0"}};
}

TEST(SessionLog, RoundTripsThroughText) {
  SessionLog log;
  log.append(header());
  log.append({{"type", "query"}, {"p", 0.5}, {"ts", "t1"}});
  log.append({{"type", "response"}, {"answer", "prefers_gamble"}, {"ts", "t2"}});
  const std::string text = log.to_jsonl();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
  const SessionLog back = SessionLog::parse(text);
  ASSERT_EQ(back.size(), 3u);
  EXPECT_EQ(back.records(), log.records());
  EXPECT_EQ(back.of_type("query").size(), 1u);
  EXPECT_EQ(back.header().at("version"), kLogVersion);
}

TEST(SessionLog, SinkSeesEveryAppend) {
  SessionLog log;
  std::vector<std::string> seen;
  log.set_sink([&](const json& r) { seen.push_back(r.at("type")); });
  log.append(header());
  log.append({{"type", "final"}});
  EXPECT_EQ(seen, (std::vector<std::string>{"header", "final"}));
}

TEST(SessionLog, NormalizedBlanksTimestamps) {
  SessionLog a;
  a.append(header());
  a.append({{"type", "final"}, {"ts", "2026-01-01T00:00:00Z"}});
  SessionLog b;
  json h = header();
  h["ts"] = "other";
  b.append(h);
  b.append({{"type", "final"}, {"ts", "2027-01-01T00:00:00Z"}});
  EXPECT_NE(a.to_jsonl(), b.to_jsonl());
  EXPECT_EQ(a.normalized().to_jsonl(), b.normalized().to_jsonl());
}

TEST(SessionLog, ParseErrorsCarryLineNumbers) {
  const std::string good = to_log_line(header());
  try {
    SessionLog::parse(good + "{\"type\":\"query\"}\n{not json\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLogFormat);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  try {
    SessionLog::parse(good + "[1,2]\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(SessionLog, RejectsMissingOrForeignHeader) {
  EXPECT_THROW(SessionLog::parse("{\"type\":\"query\"}\n"), Error);
  EXPECT_THROW(SessionLog::parse(""), Error);
  json h = header();
  h["version"] = kLogVersion + 1;
  EXPECT_THROW(SessionLog::parse(to_log_line(h)), Error);
  h = header();
  h["format"] = "something-else";
  EXPECT_THROW(SessionLog::parse(to_log_line(h)), Error);
}

TEST(SessionLog, SkipsBlankLines) {
  const SessionLog log = SessionLog::parse(to_log_line(header()) + "\n  \n" +
                                           to_log_line({{"type", "final"}}));
  EXPECT_EQ(log.size(), 2u);
}

TEST(SessionLog, SaveAndLoad) {
  const auto dir = std::filesystem::temp_directory_path() / "expelicit_log_test";
  std::filesystem::create_directories(dir);
  SessionLog log;
  log.append(header());
  log.append({{"type", "final"}, {"midpoints", {{"n0,l1,q4", 1.0}}}});
  log.save(dir / "a.jsonl");
  EXPECT_EQ(SessionLog::load(dir / "a.jsonl").records(), log.records());
  EXPECT_THROW(SessionLog::load(dir / "missing.jsonl"), Error);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace expelicit
