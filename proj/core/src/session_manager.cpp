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

#include "expelicit/session_manager.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "expelicit/rng.hpp"
#include "expelicit/serialization.hpp"

namespace expelicit {

namespace {

std::string arm_name(const ExperientialPlan& plan, int position) {
  const bool gamble_first = plan.arm_order == ArmOrder::kGambleFirst;
  return (position == 1) == gamble_first ? "gamble" : "sure";
}

json midpoints_json(const UtilityState& state) {
  return utility_to_json(state.midpoint_utility());
}

}  // namespace

json step_to_json(const ElicitationRun& run, const Step& step) {
  json j{{"session", run.id()}, {"phase", std::string(to_string(run.phase()))}};
  if (const auto* t = std::get_if<TaskStep>(&step)) {
    j["kind"] = "task";
    j["context"] = std::string(to_string(t->context));
    j["ordinal"] = t->ordinal;
    j["index"] = t->index;
    j["total"] = t->total;
    j["arm_position"] = t->arm_position;
    j["task"] = t->task;
    j["vocabulary"] = run.config().tasks.vocabularies.at(t->task.neediness);
  } else if (const auto* p = std::get_if<PresentationStep>(&step)) {
    j["kind"] = "presentation";
    j["query"] = p->presentation.query;
    j["presentation"] = p->presentation;
    j["answers"] = {"prefers_gamble", "prefers_sure", "indifferent"};
  } else if (const auto* prompt = std::get_if<PreferencePromptStep>(&step)) {
    // The probability is embodied by the tasks already served, not shown.
    const auto& plan = prompt->plan;
    j["kind"] = "preference";
    j["query"] = {{"ordinal", plan.query.ordinal},
                  {"outcome", plan.query.outcome},
                  {"delivery", std::string(to_string(plan.query.delivery))}};
    j["k"] = plan.k;
    j["arms"] = {arm_name(plan, 1), arm_name(plan, 2)};
    j["answers"] = {"prefers_gamble", "prefers_sure", "indifferent"};
  } else {
    j["kind"] = "done";
    j["intervals"] = intervals_to_json(run.state());
    j["midpoints"] = midpoints_json(run.state());
  }
  return j;
}

json session_summary(const ElicitationRun& run) {
  const auto& space = run.config().space;
  std::size_t converged = 0;
  const auto interior = space.interior();
  for (const auto& o : interior) {
    if (run.state().converged(o, run.config().termination_width)) ++converged;
  }
  return {{"session", run.id()},
          {"protocol", std::string(to_string(run.config().protocol.kind))},
          {"phase", std::string(to_string(run.phase()))},
          {"queries", run.ordinal()},
          {"converged", converged},
          {"interior", interior.size()},
          {"seed", run.config().seed}};
}

json bounds_to_json(const ElicitationRun& run) {
  json j = session_summary(run);
  j["intervals"] = intervals_to_json(run.state());
  j["midpoints"] = midpoints_json(run.state());
  j["conflicts"] = run.state().conflicts();
  return j;
}

std::variant<TaskCompletion, Answer> parse_response_payload(const json& payload) {
  try {
    const std::string kind = payload.at("kind").get<std::string>();
    if (kind == "task") {
      TaskCompletion c;
      c.applied = payload.at("applied").get<FontStyle>();
      if (payload.contains("accepted_icon") && !payload["accepted_icon"].is_null()) {
        c.accepted_icon = payload["accepted_icon"].get<std::size_t>();
      }
      c.events = payload.value("events", 0);
      if (c.events < 0) throw Error(ErrorCode::kProtocolViolation, "events must be >= 0");
      return c;
    }
    if (kind == "preference") {
      return parse_answer(payload.at("answer").get<std::string>());
    }
    throw Error(ErrorCode::kProtocolViolation, "unknown response kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kProtocolViolation, std::string("malformed response: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kProtocolViolation) throw;
    throw Error(ErrorCode::kProtocolViolation, e.what());
  }
}

SessionManager::SessionManager(StudyConfig study, std::optional<std::filesystem::path> log_dir,
                               ElicitationRun::Clock clock)
    : study_(std::move(study)), log_dir_(std::move(log_dir)), clock_(std::move(clock)) {
  if (log_dir_) {
    std::filesystem::create_directories(*log_dir_);
    load_existing();
  }
}

void SessionManager::load_existing() {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(*log_dir_)) {
    if (e.is_regular_file() && e.path().extension() == ".jsonl") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    auto entry = std::make_shared<Entry>(ElicitationRun::replay(SessionLog::load(f), clock_));
    attach_sink(*entry);
    sessions_.emplace(entry->run.id(), entry);
  }
}

void SessionManager::attach_sink(Entry& entry) {
  if (!log_dir_) return;
  const auto path = *log_dir_ / (entry.run.id() + ".jsonl");
  entry.run.set_log_sink([path](const json& record) {
    std::ofstream out(path, std::ios::app);
    out << to_log_line(record);
  });
}

std::shared_ptr<SessionManager::Entry> SessionManager::find(const std::string& id) const {
  std::shared_lock lock(map_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(ErrorCode::kUnknownSession, "no session '" + id + "'");
  return it->second;
}

json SessionManager::create(const json& request) {
  if (!request.is_object()) throw Error(ErrorCode::kInvalidConfig, "request must be an object");
  if (request.contains("study") && request["study"].get<std::string>() != study_.name) {
    throw Error(ErrorCode::kInvalidConfig,
                "unknown study '" + request["study"].get<std::string>() + "'");
  }
  ProtocolKind protocol = study_.run.protocol.kind;
  if (request.contains("protocol")) {
    protocol = parse_protocol_kind(request["protocol"].get<std::string>());
  }

  std::unique_lock lock(map_mutex_);
  std::string id;
  std::uint64_t ordinal = next_auto_id_;
  if (request.contains("id")) {
    id = request["id"].get<std::string>();
    if (id.empty() || id.find_first_not_of("abcdefghijklmnopqrstuvwxyz"
                                           "ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789-_") !=
                          std::string::npos) {
      throw Error(ErrorCode::kInvalidConfig, "session ids use letters, digits, '-' and '_'");
    }
    if (sessions_.count(id)) throw Error(ErrorCode::kDuplicateSession, "session '" + id + "' exists");
  } else {
    do {
      std::ostringstream os;
      os << "s" << std::setw(4) << std::setfill('0') << next_auto_id_;
      id = os.str();
      ordinal = next_auto_id_++;
    } while (sessions_.count(id));
  }
  const std::uint64_t seed = request.contains("seed")
                                 ? request["seed"].get<std::uint64_t>()
                                 : derive_seed(study_.run.seed, {ordinal});

  auto entry = std::make_shared<Entry>(ElicitationRun(study_.run_for(protocol, seed), id, clock_));
  if (log_dir_) {
    entry->run.log().save(*log_dir_ / (id + ".jsonl"));
    attach_sink(*entry);
  }
  sessions_.emplace(id, entry);
  return session_summary(entry->run);
}

json SessionManager::next_step(const std::string& id) {
  auto entry = find(id);
  std::lock_guard lock(entry->mutex);
  return step_to_json(entry->run, entry->run.next_step());
}

json SessionManager::submit(const std::string& id, const json& payload) {
  auto entry = find(id);
  std::lock_guard lock(entry->mutex);
  std::string token;
  if (payload.is_object() && payload.contains("token") && payload["token"].is_string()) {
    token = payload["token"].get<std::string>();
    if (auto it = entry->replies.find(token); it != entry->replies.end()) {
      json reply = it->second;
      reply["duplicate"] = true;
      return reply;
    }
  }
  const auto response = parse_response_payload(payload);
  json reply;
  if (const auto* c = std::get_if<TaskCompletion>(&response)) {
    entry->run.submit(*c);
    reply = session_summary(entry->run);
    reply["accepted"] = "task";
  } else {
    const Answer answer = std::get<Answer>(response);
    const auto pending = entry->run.peek();
    const BoundQuery query = std::holds_alternative<PresentationStep>(pending)
                                 ? std::get<PresentationStep>(pending).presentation.query
                             : std::holds_alternative<PreferencePromptStep>(pending)
                                 ? std::get<PreferencePromptStep>(pending).plan.query
                                 : BoundQuery{};
    const BoundUpdate update = entry->run.submit(answer);
    reply = session_summary(entry->run);
    reply["accepted"] = "preference";
    reply["update"] = {{"outcome", query.outcome},
                       {"answer", std::string(to_string(answer))},
                       {"before", update.before},
                       {"after", update.after},
                       {"conflict", update.conflict ? json(*update.conflict) : json(nullptr)}};
  }
  reply["duplicate"] = false;
  if (!token.empty()) entry->replies[token] = reply;
  return reply;
}

json SessionManager::bounds(const std::string& id) const {
  auto entry = find(id);
  std::lock_guard lock(entry->mutex);
  return bounds_to_json(entry->run);
}

json SessionManager::summary(const std::string& id) const {
  auto entry = find(id);
  std::lock_guard lock(entry->mutex);
  return session_summary(entry->run);
}

std::string SessionManager::log_jsonl(const std::string& id) const {
  auto entry = find(id);
  std::lock_guard lock(entry->mutex);
  return entry->run.log().to_jsonl();
}

json SessionManager::suspend(const std::string& id) {
  auto entry = find(id);
  std::lock_guard lock(entry->mutex);
  entry->run.suspend();
  return session_summary(entry->run);
}

json SessionManager::resume(const std::string& id) {
  auto entry = find(id);
  std::lock_guard lock(entry->mutex);
  entry->run.resume();
  return session_summary(entry->run);
}

std::vector<std::string> SessionManager::ids() const {
  std::shared_lock lock(map_mutex_);
  std::vector<std::string> out;
  for (const auto& [id, e] : sessions_) out.push_back(id);
  return out;
}

std::size_t SessionManager::size() const {
  std::shared_lock lock(map_mutex_);
  return sessions_.size();
}

}  // namespace expelicit
