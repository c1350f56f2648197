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

#include "expelicit/study.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "expelicit/decision_model.hpp"
#include "expelicit/rng.hpp"
#include "expelicit/serialization.hpp"

namespace expelicit {

namespace {

constexpr std::uint64_t kTruthStream = 0;
constexpr std::uint64_t kRunStream = 1;
constexpr std::uint64_t kRespondentStream = 2;
constexpr std::uint64_t kFamilyStream = 3;

const PopulationSpec& population_of(const StudyConfig& study) {
  if (!study.population) {
    throw Error(ErrorCode::kInvalidConfig, "study has no population section");
  }
  return *study.population;
}

UtilityFamily draw_family(const std::map<UtilityFamily, double>& weights, std::uint64_t seed) {
  double total = 0.0;
  for (const auto& [f, w] : weights) total += w;
  if (!(total > 0.0)) throw Error(ErrorCode::kInvalidConfig, "family weights sum to zero");
  Rng rng(seed);
  double x = uniform_unit(rng) * total;
  UtilityFamily last = weights.begin()->first;
  for (const auto& [f, w] : weights) {
    if (w <= 0.0) continue;
    last = f;
    if (x < w) return f;
    x -= w;
  }
  return last;
}

std::string respondent_id(const std::string& label, int respondent) {
  std::ostringstream os;
  os << label << "-" << std::setw(3) << std::setfill('0') << respondent + 1;
  return os.str();
}

OutcomeSpace space_of(const SessionLog& log) {
  return run_config_from_json(log.header().at("config")).space;
}

std::string fmt(double v, int precision = 6) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

SimulatedSession simulate_respondent(const StudyConfig& study, std::size_t condition,
                                     int respondent, ElicitationRun::Clock clock) {
  const PopulationSpec& pop = population_of(study);
  if (condition >= pop.conditions.size()) {
    throw Error(ErrorCode::kInvalidConfig, "no condition at position " + std::to_string(condition));
  }
  const ConditionSpec& spec = pop.conditions[condition];
  const auto path = [&](std::uint64_t stream) {
    return derive_seed(study.run.seed,
                       {condition, static_cast<std::uint64_t>(respondent), stream});
  };

  const UtilityFamily family = draw_family(pop.family_weights, path(kFamilyStream));
  GroundTruthUtility truth = sample_ground_truth(family, study.run.space, path(kTruthStream));
  SimulatedRespondent respondent_model(std::move(truth), pop.bias, pop.response,
                                       path(kRespondentStream));

  const std::string id = respondent_id(spec.label, respondent);
  ElicitationRun run(study.run_for(spec.protocol, path(kRunStream)), id, std::move(clock));
  if (run_protocol(run, respondent_model) != RunStatus::kDone) {
    throw Error(ErrorCode::kProtocolViolation, "simulated respondent " + id + " did not finish");
  }
  return SimulatedSession{spec.label, id, family, run.log()};
}

std::vector<SimulatedSession> simulate_study(const StudyConfig& study,
                                             ElicitationRun::Clock clock) {
  const PopulationSpec& pop = population_of(study);
  std::vector<SimulatedSession> out;
  for (std::size_t c = 0; c < pop.conditions.size(); ++c) {
    for (int r = 0; r < pop.conditions[c].count; ++r) {
      out.push_back(simulate_respondent(study, c, r, clock));
    }
  }
  return out;
}

std::vector<std::filesystem::path> run_simulated_study(const StudyConfig& study,
                                                       const std::filesystem::path& out_dir,
                                                       bool normalize_timestamps) {
  const auto clock = normalize_timestamps ? ElicitationRun::fixed_clock("")
                                          : ElicitationRun::utc_clock();
  std::vector<std::filesystem::path> written;
  for (const auto& s : simulate_study(study, clock)) {
    const auto dir = out_dir / s.condition;
    std::filesystem::create_directories(dir);
    const auto file = dir / (s.id + ".jsonl");
    s.log.save(file);
    written.push_back(file);
  }
  return written;
}

UtilityState replay_intervals(const SessionLog& log) {
  const RunConfig config = run_config_from_json(log.header().at("config"));
  UtilityState state(config.space, config.conflict_policy);
  try {
    for (const auto& r : log.of_type("response")) {
      state.apply_response(
          r.at("outcome").get<Outcome>(),
          Probability::from_double(r.at("p").get<double>(), config.space.divisions()),
          parse_answer(r.at("answer").get<std::string>()));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kLogFormat, std::string("unreadable response record: ") + e.what());
  }
  return state;
}

void verify_log(const SessionLog& log) {
  const std::string id = log.header().value("session_id", std::string("?"));
  const auto finals = log.of_type("final");
  if (finals.empty()) throw Error(ErrorCode::kLogFormat, "session " + id + " is incomplete");
  const UtilityState state = replay_intervals(log);
  const json& stored = finals.back().at("intervals");
  for (const auto& o : state.space().enumerate()) {
    const auto key = o.to_string();
    if (!stored.contains(key) ||
        interval_from_json(stored.at(key), state.space().divisions()) != state.interval(o)) {
      throw Error(ErrorCode::kReplayMismatch,
                  "session " + id + ": replayed interval for " + key + " differs from the log");
    }
  }
}

std::vector<SessionLog> load_log_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::kLogFormat, dir.string() + " is not a directory");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".jsonl") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<SessionLog> logs;
  for (const auto& f : files) logs.push_back(SessionLog::load(f));
  return logs;
}

SampleMatrix midpoint_matrix(const std::vector<SessionLog>& logs) {
  if (logs.empty()) throw Error(ErrorCode::kInvalidSample, "no session logs");
  const OutcomeSpace space = space_of(logs.front());
  SampleMatrix m;
  m.columns = space.enumerate();
  m.values.resize(static_cast<Eigen::Index>(logs.size()),
                  static_cast<Eigen::Index>(m.columns.size()));
  for (std::size_t i = 0; i < logs.size(); ++i) {
    const auto& log = logs[i];
    const std::string id = log.header().value("session_id", std::string("?"));
    if (!(space_of(log) == space)) {
      throw Error(ErrorCode::kIncompatibleStudy,
                  "session " + id + " uses a different outcome grid");
    }
    verify_log(log);
    const json mids = log.of_type("final").back().at("midpoints");
    for (std::size_t c = 0; c < m.columns.size(); ++c) {
      m.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
          mids.at(m.columns[c].to_string()).get<double>();
    }
    m.row_labels.push_back(id);
  }
  m.validate();
  return m;
}

StudyAnalysis analyze_matrices(SampleMatrix a, SampleMatrix b, std::string label_a,
                               std::string label_b, double alpha) {
  StudyAnalysis out;
  out.label_a = std::move(label_a);
  out.label_b = std::move(label_b);
  out.t = t_test_per_outcome(a, b);
  out.hotelling = hotelling_t2(a, b);
  out.table = summarize(out.t, alpha);
  out.a = std::move(a);
  out.b = std::move(b);
  return out;
}

StudyAnalysis export_and_analyze(const std::vector<SessionLog>& a,
                                 const std::vector<SessionLog>& b, std::string label_a,
                                 std::string label_b, double alpha) {
  return analyze_matrices(midpoint_matrix(a), midpoint_matrix(b), std::move(label_a),
                          std::move(label_b), alpha);
}

std::string render_matrix_csv(const SampleMatrix& m) {
  std::ostringstream os;
  os << "respondent";
  for (const auto& c : m.columns) os << "," << csv_field(c.to_string());
  os << "\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    os << csv_field(r < static_cast<Eigen::Index>(m.row_labels.size())
                        ? m.row_labels[static_cast<std::size_t>(r)]
                        : std::to_string(r + 1));
    for (Eigen::Index c = 0; c < m.cols(); ++c) os << "," << fmt(m.values(r, c), 10);
    os << "\n";
  }
  return os.str();
}

std::string render_analysis_text(const StudyAnalysis& s) {
  std::ostringstream os;
  const auto& h = s.hotelling;
  os << s.label_a << " (n=" << s.a.rows() << ") vs " << s.label_b << " (n=" << s.b.rows()
     << ")\n";
  os << "Per-outcome pooled t, df=" << fmt(s.table.df) << ", two-tailed critical |t| > "
     << fmt(s.table.critical, 4) << " at alpha=" << fmt(s.table.alpha) << "\n";
  os << std::left << std::setw(12) << "outcome" << std::right << std::setw(10) << "mean_A"
     << std::setw(10) << "mean_B" << std::setw(10) << "t" << std::setw(10) << "p"
     << "  flag\n";
  for (std::size_t i = 0; i < s.table.rows.size(); ++i) {
    const auto& row = s.table.rows[i];
    const auto c = static_cast<Eigen::Index>(i);
    os << std::left << std::setw(12) << row.outcome.to_string() << std::right << std::setw(10)
       << fmt(s.a.values.col(c).mean(), 4) << std::setw(10) << fmt(s.b.values.col(c).mean(), 4)
       << std::setw(10) << fmt(row.t, 4) << std::setw(10) << fmt(row.p_value, 3) << "  "
       << (row.significant ? "*" : "") << "\n";
  }
  os << "mean t = " << fmt(s.table.mean_t, 4) << ", flagged " << s.table.flagged << " of "
     << s.table.rows.size() << "\n";
  os << "Hotelling T2 = " << fmt(h.statistic, 6) << ", rank " << h.effective_dimension;
  if (h.p_value) {
    os << ", F(" << fmt(h.f_df1) << ", " << fmt(h.f_df2) << ") = " << fmt(h.f_statistic, 6)
       << ", p = " << fmt(*h.p_value, 4);
  } else {
    os << ", p unavailable";
  }
  os << "\n";
  for (const auto& w : h.warnings) os << "warning: " << w << "\n";
  return os.str();
}

std::string render_analysis_csv(const StudyAnalysis& s) {
  std::ostringstream os;
  os << "outcome,mean_" << csv_field(s.label_a) << ",mean_" << csv_field(s.label_b)
     << ",t,df,p,significant\n";
  for (std::size_t i = 0; i < s.table.rows.size(); ++i) {
    const auto& row = s.table.rows[i];
    const auto c = static_cast<Eigen::Index>(i);
    os << row.outcome.to_string() << "," << fmt(s.a.values.col(c).mean(), 10) << ","
       << fmt(s.b.values.col(c).mean(), 10) << "," << fmt(row.t, 10) << "," << fmt(s.table.df)
       << "," << fmt(row.p_value, 10) << "," << (row.significant ? 1 : 0) << "\n";
  }
  const auto& h = s.hotelling;
  os << "hotelling_t2," << ",," << fmt(h.statistic, 10) << "," << fmt(h.f_df1) << ";"
     << fmt(h.f_df2) << "," << (h.p_value ? fmt(*h.p_value, 10) : std::string()) << ","
     << (h.p_value && *h.p_value < s.table.alpha ? 1 : 0) << "\n";
  return os.str();
}

json decide_batch(const json& input, const StudyConfig& study,
                  const std::filesystem::path& base_dir) {
  const OutcomeSpace& space = study.run.space;
  std::optional<UtilityFunction> u;
  try {
    const json& spec = input.at("utility");
    if (spec.contains("log")) {
      std::filesystem::path path = spec["log"].get<std::string>();
      if (path.is_relative()) path = base_dir / path;
      const SessionLog log = SessionLog::load(path);
      verify_log(log);
      const OutcomeSpace log_space = space_of(log);
      const json mids = log.of_type("final").back().at("midpoints");
      std::vector<double> values;
      for (const auto& o : log_space.enumerate()) values.push_back(mids.at(o.to_string()).get<double>());
      u.emplace(log_space, std::move(values));
    } else {
      const json& given = spec.at("values");
      std::vector<double> values;
      for (const auto& o : space.enumerate()) {
        if (!given.contains(o.to_string())) {
          throw Error(ErrorCode::kInvalidConfig, "utility is missing " + o.to_string());
        }
        values.push_back(given.at(o.to_string()).get<double>());
      }
      u.emplace(space, std::move(values));
    }

    const NoSuggestionUtility none = study.u_none.empty()
                                         ? NoSuggestionUtility::from_utility(*u)
                                         : NoSuggestionUtility{study.u_none};
    json results = json::array();
    for (const json& sc : input.at("scenarios")) {
      GoalLibrary library;
      for (const json& g : sc.at("goals")) {
        HighlightGoal goal;
        goal.target = g.at("target").get<FontStyle>();
        if (g.contains("baseline")) goal.baseline = g["baseline"].get<FontStyle>();
        library.goals.push_back(goal);
      }
      if (sc.contains("prior")) {
        library.prior = sc["prior"].get<std::vector<double>>();
      } else {
        library = GoalLibrary::uniform(library.goals);
      }
      library.validate();
      GoalBelief belief(library);
      for (const json& e : sc.value("events", json::array())) {
        belief = update_belief(
            belief,
            EventObservation{parse_feature(e.at("feature").get<std::string>()), e.at("value").get<int>()},
            study.observation_noise);
      }
      std::vector<Toolbar> candidates;
      for (const json& c : sc.at("candidates")) candidates.push_back(c.get<Toolbar>());
      const int n = sc.at("neediness").get<int>();
      const Decision d = choose_action(candidates, belief, *u, n, none);
      results.push_back({{"name", sc.value("name", std::string())},
                         {"posterior", belief.posterior()},
                         {"no_suggestion_utility", d.no_suggestion_utility},
                         {"candidate_utilities", d.candidate_utilities},
                         {"choice", d.candidate ? json(*d.candidate) : json(nullptr)},
                         {"expected_utility", d.expected_utility}});
    }
    return results;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidConfig, std::string("malformed decision input: ") + e.what());
  }
}

}  // namespace expelicit
