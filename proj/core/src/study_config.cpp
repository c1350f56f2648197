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

#include "expelicit/study_config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>
#include <tuple>

#include <yaml-cpp/yaml.h>

namespace expelicit {

namespace {

std::string format_diagnostics(const std::string& source,
                               const std::vector<ConfigDiagnostic>& diags) {
  std::ostringstream os;
  for (std::size_t i = 0; i < diags.size(); ++i) {
    const auto& d = diags[i];
    if (i) os << "\n";
    os << source;
    if (d.line > 0) os << ":" << d.line << ":" << d.column;
    os << ": " << d.field << ": " << d.message;
  }
  return os.str();
}

// Collects diagnostics while walking the YAML tree; every accessor reports
// against the node (or the enclosing map when the key is missing).
class Reader {
 public:
  void error(const YAML::Node& at, const std::string& field, const std::string& message) {
    ConfigDiagnostic d;
    d.field = field;
    d.message = message;
    const YAML::Mark mark = at.IsDefined() ? at.Mark() : YAML::Mark::null_mark();
    if (!mark.is_null()) {
      d.line = mark.line + 1;
      d.column = mark.column + 1;
    }
    diagnostics.push_back(std::move(d));
  }

  bool expect_map(const YAML::Node& node, const std::string& field) {
    if (!node.IsMap()) {
      error(node, field, "expected a mapping");
      return false;
    }
    return true;
  }

  void allow_keys(const YAML::Node& map, const std::string& path,
                  std::initializer_list<const char*> allowed) {
    const std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto& kv : map) {
      const auto key = kv.first.as<std::string>();
      if (!keys.count(key)) error(kv.first, join(path, key), "unknown key");
    }
  }

  template <typename T>
  void read(const YAML::Node& map, const char* key, const std::string& path, T& out) {
    const YAML::Node node = map[key];
    if (!node) return;
    try {
      out = node.as<T>();
    } catch (const YAML::Exception&) {
      error(node, join(path, key), "has the wrong type");
    }
  }

  template <typename T>
  void read_list(const YAML::Node& map, const char* key, const std::string& path,
                 std::vector<T>& out) {
    const YAML::Node node = map[key];
    if (!node) return;
    if (!node.IsSequence()) {
      error(node, join(path, key), "expected a list");
      return;
    }
    read(map, key, path, out);
  }

  static std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }

  std::vector<ConfigDiagnostic> diagnostics;
};

int parse_level_key(const std::string& key) {
  std::string digits = key;
  if (!digits.empty() && digits.front() == 'n') digits.erase(0, 1);
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
    throw Error(ErrorCode::kInvalidConfig, "neediness keys look like n0, n1, ...");
  }
  return std::stoi(digits);
}

}  // namespace

namespace {

// Source order; diagnostics without a position go last.
std::vector<ConfigDiagnostic> by_position(std::vector<ConfigDiagnostic> d) {
  std::stable_sort(d.begin(), d.end(), [](const ConfigDiagnostic& a, const ConfigDiagnostic& b) {
    const auto key = [](const ConfigDiagnostic& x) {
      return std::make_tuple(x.line == 0, x.line, x.column);
    };
    return key(a) < key(b);
  });
  return d;
}

}  // namespace

ConfigError::ConfigError(std::string source, std::vector<ConfigDiagnostic> diagnostics)
    : Error(ErrorCode::kInvalidConfig, format_diagnostics(source, by_position(diagnostics))),
      diagnostics_(by_position(std::move(diagnostics))) {}

StudyConfig StudyConfig::defaults() {
  StudyConfig c;
  PopulationSpec pop;
  for (auto f : {UtilityFamily::kConvex, UtilityFamily::kConcave, UtilityFamily::kLinear,
                 UtilityFamily::kFlatBelowPerfectQ, UtilityFamily::kFlatAboveL1}) {
    pop.family_weights[f] = 1.0;
  }
  pop.bias = BiasModel::defaults(c.run.space);
  pop.conditions = {{"conceptual", ProtocolKind::kConceptual, 13},
                    {"experiential", ProtocolKind::kExperiential, 8}};
  c.population = pop;
  return c;
}

RunConfig StudyConfig::run_for(ProtocolKind protocol, std::uint64_t seed) const {
  RunConfig r = run;
  r.protocol = Protocol::make(protocol, r.primed_plus_prefix);
  r.seed = seed;
  return r;
}

StudyConfig parse_study_config(const std::string& text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    ConfigDiagnostic d{e.mark.line + 1, e.mark.column + 1, "<syntax>", e.msg};
    throw ConfigError(source, {d});
  }
  Reader rd;
  if (root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
  if (!rd.expect_map(root, "<root>")) throw ConfigError(source, rd.diagnostics);
  rd.allow_keys(root, "", {"study", "grid", "anchors", "elicitation", "vocabularies",
                           "decision", "population"});

  StudyConfig defaults = StudyConfig::defaults();
  StudyConfig cfg = defaults;
  cfg.population.reset();

  if (const auto study = root["study"]; study && rd.expect_map(study, "study")) {
    rd.allow_keys(study, "study", {"name", "seed"});
    rd.read(study, "name", "study", cfg.name);
    rd.read(study, "seed", "study", cfg.run.seed);
  }

  AttributeGrid grid;
  double step = 0.1;
  YAML::Node grid_node = root["grid"];
  if (grid_node && rd.expect_map(grid_node, "grid")) {
    rd.allow_keys(grid_node, "grid", {"neediness_levels", "lengths", "qualities", "probability_step"});
    rd.read_list(grid_node, "neediness_levels", "grid", grid.neediness_levels);
    rd.read_list(grid_node, "lengths", "grid", grid.lengths);
    rd.read_list(grid_node, "qualities", "grid", grid.qualities);
    rd.read(grid_node, "probability_step", "grid", step);
    try {
      grid.divisions = AttributeGrid::divisions_for_step(step);
    } catch (const Error& e) {
      rd.error(grid_node["probability_step"], "grid.probability_step", e.what());
    }
  }

  Outcome best = defaults.run.space.best();
  Outcome worst = defaults.run.space.worst();
  YAML::Node anchors = root["anchors"];
  if (anchors && rd.expect_map(anchors, "anchors")) {
    rd.allow_keys(anchors, "anchors", {"best", "worst"});
    for (auto [key, target] : {std::pair{"best", &best}, std::pair{"worst", &worst}}) {
      std::string text;
      rd.read(anchors, key, "anchors", text);
      if (text.empty()) continue;
      try {
        *target = Outcome::parse(text);
      } catch (const Error& e) {
        rd.error(anchors[key], std::string("anchors.") + key, e.what());
      }
    }
  }

  RunConfig& run = cfg.run;
  std::string protocol = "conceptual";
  std::string scheduling = "sequential";
  std::string policy = "trust-new";
  YAML::Node el = root["elicitation"];
  if (el && rd.expect_map(el, "elicitation")) {
    rd.allow_keys(el, "elicitation", {"k", "termination_width", "protocol", "primed_plus_prefix",
                                      "scheduling", "conflict_policy", "goal_complexity"});
    rd.read(el, "k", "elicitation", run.k);
    rd.read(el, "termination_width", "elicitation", run.termination_width);
    rd.read(el, "protocol", "elicitation", protocol);
    rd.read(el, "primed_plus_prefix", "elicitation", run.primed_plus_prefix);
    rd.read(el, "scheduling", "elicitation", scheduling);
    rd.read(el, "conflict_policy", "elicitation", policy);
    rd.read(el, "goal_complexity", "elicitation", run.tasks.goal_complexity);
  }
  auto el_node = [&](const char* key) { return el ? el[key] : YAML::Node(); };
  try {
    run.protocol = Protocol::make(parse_protocol_kind(protocol), run.primed_plus_prefix);
  } catch (const Error& e) {
    rd.error(el_node("protocol"), "elicitation.protocol", e.what());
  }
  try {
    run.scheduling = parse_schedule_mode(scheduling);
  } catch (const Error& e) {
    rd.error(el_node("scheduling"), "elicitation.scheduling", e.what());
  }
  try {
    run.conflict_policy = parse_conflict_policy(policy);
  } catch (const Error& e) {
    rd.error(el_node("conflict_policy"), "elicitation.conflict_policy", e.what());
  }
  if (run.k < 1) rd.error(el_node("k"), "elicitation.k", "must be positive");
  if (run.k % grid.divisions != 0) {
    rd.error(el_node("k"), "elicitation.k",
             "p*k must be integral for every grid probability; k must be a multiple of " +
                 std::to_string(grid.divisions));
  }
  if (!(run.termination_width >= grid.probability_step() - 1e-12 && run.termination_width <= 1.0)) {
    rd.error(el_node("termination_width"), "elicitation.termination_width",
             "must lie in [probability_step, 1]");
  }
  if (run.primed_plus_prefix < 0) {
    rd.error(el_node("primed_plus_prefix"), "elicitation.primed_plus_prefix", "must be >= 0");
  }

  YAML::Node vocabs = root["vocabularies"];
  if (vocabs && rd.expect_map(vocabs, "vocabularies")) {
    std::map<int, Vocabulary> levels = run.tasks.vocabularies.levels();
    for (const auto& kv : vocabs) {
      const std::string key = kv.first.as<std::string>();
      const std::string path = "vocabularies." + key;
      int level = 0;
      try {
        level = parse_level_key(key);
      } catch (const Error& e) {
        rd.error(kv.first, path, e.what());
        continue;
      }
      if (!rd.expect_map(kv.second, path)) continue;
      rd.allow_keys(kv.second, path, {"colors", "fonts"});
      Vocabulary v = levels.count(level) ? levels[level] : Vocabulary{};
      rd.read_list(kv.second, "colors", path, v.colors);
      rd.read_list(kv.second, "fonts", path, v.fonts);
      if (v.colors.empty() || v.fonts.empty()) {
        rd.error(kv.second, path, "needs at least one color and one font");
      }
      levels[level] = v;
    }
    try {
      run.tasks.vocabularies = VocabularySet(std::move(levels));
    } catch (const Error& e) {
      rd.error(vocabs, "vocabularies", e.what());
    }
  }

  try {
    run.space = OutcomeSpace(grid, best, worst, run.tasks.goal_complexity);
  } catch (const Error& e) {
    rd.error(grid_node ? grid_node : (anchors ? anchors : root), grid_node ? "grid" : "anchors",
             e.what());
  }
  for (int n : grid.neediness_levels) {
    if (!run.tasks.vocabularies.levels().count(n)) {
      rd.error(vocabs ? vocabs : root, "vocabularies",
               "no vocabulary for neediness level n" + std::to_string(n));
    }
  }
  if (rd.diagnostics.empty()) {
    // Every grid outcome must be realizable as a task.
    for (const auto& o : run.space.enumerate()) {
      try {
        (void)make_task(o, run.tasks.vocabularies, run.tasks.goal_complexity, 0);
      } catch (const Error& e) {
        rd.error(el_node("goal_complexity"), "elicitation.goal_complexity",
                 "cannot build tasks for " + o.to_string() + ": " + e.what());
        break;
      }
    }
  }

  YAML::Node decision = root["decision"];
  if (decision && rd.expect_map(decision, "decision")) {
    rd.allow_keys(decision, "decision", {"u_none", "observation_noise"});
    rd.read(decision, "observation_noise", "decision", cfg.observation_noise);
    if (!(cfg.observation_noise > 0.0 && cfg.observation_noise < 1.0)) {
      rd.error(decision["observation_noise"], "decision.observation_noise", "must lie in (0, 1)");
    }
    const YAML::Node un = decision["u_none"];
    if (un && un.IsMap()) {
      for (const auto& kv : un) {
        const std::string path = "decision.u_none." + kv.first.as<std::string>();
        try {
          const int level = parse_level_key(kv.first.as<std::string>());
          const double v = kv.second.as<double>();
          if (!(v >= 0.0 && v <= 1.0)) {
            rd.error(kv.second, path, "must lie in [0, 1]");
          }
          cfg.u_none[level] = v;
        } catch (const Error& e) {
          rd.error(kv.first, path, e.what());
        } catch (const YAML::Exception&) {
          rd.error(kv.second, path, "has the wrong type");
        }
      }
    } else if (un && !(un.IsScalar() && un.as<std::string>() == "auto")) {
      rd.error(un, "decision.u_none", "expected 'auto' or a mapping n<level>: value");
    }
  }

  YAML::Node pop_node = root["population"];
  if (pop_node && rd.expect_map(pop_node, "population")) {
    rd.allow_keys(pop_node, "population", {"families", "bias", "response", "conditions"});
    PopulationSpec pop = *defaults.population;
    pop.bias = BiasModel::defaults(run.space);

    if (const auto fam = pop_node["families"]; fam && rd.expect_map(fam, "population.families")) {
      pop.family_weights.clear();
      for (const auto& kv : fam) {
        const std::string path = "population.families." + kv.first.as<std::string>();
        try {
          const UtilityFamily f = parse_utility_family(kv.first.as<std::string>());
          if (f == UtilityFamily::kCustom) {
            rd.error(kv.first, path, "custom utilities cannot be sampled");
            continue;
          }
          const double w = kv.second.as<double>();
          if (!(w >= 0.0)) rd.error(kv.second, path, "weight must be nonnegative");
          pop.family_weights[f] = w;
        } catch (const Error& e) {
          rd.error(kv.first, path, e.what());
        } catch (const YAML::Exception&) {
          rd.error(kv.second, path, "has the wrong type");
        }
      }
      double total = 0.0;
      for (const auto& [f, w] : pop.family_weights) total += w;
      if (!(total > 0.0)) rd.error(fam, "population.families", "weights must not all be zero");
    }

    if (const auto bias = pop_node["bias"]; bias && rd.expect_map(bias, "population.bias")) {
      rd.allow_keys(bias, "population.bias",
                    {"attenuation", "inflation", "decay", "attenuated", "inflated"});
      rd.read(bias, "attenuation", "population.bias", pop.bias.attenuation);
      rd.read(bias, "inflation", "population.bias", pop.bias.inflation);
      rd.read(bias, "decay", "population.bias", pop.bias.decay);
      for (auto [key, target] : {std::pair{"attenuated", &pop.bias.attenuated},
                                 std::pair{"inflated", &pop.bias.inflated}}) {
        std::vector<std::string> names;
        rd.read_list(bias, key, "population.bias", names);
        if (!bias[key]) continue;
        target->clear();
        for (const auto& name : names) {
          try {
            const Outcome o = Outcome::parse(name);
            if (!run.space.contains(o)) {
              throw Error(ErrorCode::kUnknownOutcome, o.to_string() + " is not in the grid");
            }
            target->push_back(o);
          } catch (const Error& e) {
            rd.error(bias[key], std::string("population.bias.") + key, e.what());
          }
        }
      }
      try {
        pop.bias.validate();
      } catch (const Error& e) {
        rd.error(bias, "population.bias", e.what());
      }
    }

    if (const auto resp = pop_node["response"]; resp && rd.expect_map(resp, "population.response")) {
      rd.allow_keys(resp, "population.response",
                    {"mode", "temperature_conceptual", "temperature_experiential", "lapse"});
      std::string mode = "logistic";
      rd.read(resp, "mode", "population.response", mode);
      if (mode == "deterministic") {
        pop.response.mode = ResponseModel::Mode::kDeterministic;
      } else if (mode == "logistic") {
        pop.response.mode = ResponseModel::Mode::kLogistic;
      } else {
        rd.error(resp["mode"], "population.response.mode", "expected deterministic or logistic");
      }
      rd.read(resp, "temperature_conceptual", "population.response", pop.response.temperature_conceptual);
      rd.read(resp, "temperature_experiential", "population.response",
              pop.response.temperature_experiential);
      rd.read(resp, "lapse", "population.response", pop.response.lapse);
      try {
        pop.response.validate();
      } catch (const Error& e) {
        rd.error(resp, "population.response", e.what());
      }
    }

    if (const auto conds = pop_node["conditions"]) {
      if (!conds.IsSequence()) {
        rd.error(conds, "population.conditions", "expected a list");
      } else {
        pop.conditions.clear();
        std::set<std::string> labels;
        for (std::size_t i = 0; i < conds.size(); ++i) {
          const YAML::Node c = conds[i];
          const std::string path = "population.conditions[" + std::to_string(i) + "]";
          if (!rd.expect_map(c, path)) continue;
          rd.allow_keys(c, path, {"label", "protocol", "count"});
          ConditionSpec spec;
          std::string proto = "conceptual";
          rd.read(c, "protocol", path, proto);
          rd.read(c, "count", path, spec.count);
          spec.label = proto;
          rd.read(c, "label", path, spec.label);
          try {
            spec.protocol = parse_protocol_kind(proto);
          } catch (const Error& e) {
            rd.error(c["protocol"], path + ".protocol", e.what());
          }
          if (spec.count < 0) rd.error(c["count"], path + ".count", "must be >= 0");
          if (spec.label.empty() || spec.label.find_first_of("/\\") != std::string::npos) {
            rd.error(c["label"], path + ".label", "must be a plain name");
          }
          if (!labels.insert(spec.label).second) {
            rd.error(c, path + ".label", "duplicate condition label '" + spec.label + "'");
          }
          pop.conditions.push_back(spec);
        }
      }
    }
    cfg.population = pop;
  }

  if (!rd.diagnostics.empty()) throw ConfigError(source, rd.diagnostics);
  return cfg;
}

StudyConfig load_study_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(path.string(), {ConfigDiagnostic{0, 0, "<file>", "cannot open"}});
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_study_config(ss.str(), path.string());
}

namespace {

// Shortest text that reads back as the same double.
std::string num(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string render_study_config(const StudyConfig& c) {
  const auto& g = c.run.space.grid();
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "study" << YAML::Value << YAML::BeginMap
      << YAML::Key << "name" << YAML::Value << c.name
      << YAML::Key << "seed" << YAML::Value << c.run.seed << YAML::EndMap;
  out << YAML::Key << "grid" << YAML::Value << YAML::BeginMap
      << YAML::Key << "neediness_levels" << YAML::Value << YAML::Flow << g.neediness_levels
      << YAML::Key << "lengths" << YAML::Value << YAML::Flow << g.lengths
      << YAML::Key << "qualities" << YAML::Value << YAML::Flow << g.qualities
      << YAML::Key << "probability_step" << YAML::Value << num(g.probability_step()) << YAML::EndMap;
  out << YAML::Key << "anchors" << YAML::Value << YAML::BeginMap
      << YAML::Key << "best" << YAML::Value << c.run.space.best().to_string()
      << YAML::Key << "worst" << YAML::Value << c.run.space.worst().to_string() << YAML::EndMap;
  out << YAML::Key << "elicitation" << YAML::Value << YAML::BeginMap
      << YAML::Key << "k" << YAML::Value << c.run.k
      << YAML::Key << "termination_width" << YAML::Value << num(c.run.termination_width)
      << YAML::Key << "protocol" << YAML::Value << std::string(to_string(c.run.protocol.kind))
      << YAML::Key << "primed_plus_prefix" << YAML::Value << c.run.primed_plus_prefix
      << YAML::Key << "scheduling" << YAML::Value << std::string(to_string(c.run.scheduling))
      << YAML::Key << "conflict_policy" << YAML::Value
      << std::string(to_string(c.run.conflict_policy))
      << YAML::Key << "goal_complexity" << YAML::Value << c.run.tasks.goal_complexity
      << YAML::EndMap;
  out << YAML::Key << "vocabularies" << YAML::Value << YAML::BeginMap;
  for (const auto& [level, v] : c.run.tasks.vocabularies.levels()) {
    out << YAML::Key << "n" + std::to_string(level) << YAML::Value << YAML::BeginMap
        << YAML::Key << "colors" << YAML::Value << YAML::Flow << v.colors
        << YAML::Key << "fonts" << YAML::Value << YAML::Flow << v.fonts << YAML::EndMap;
  }
  out << YAML::EndMap;
  out << YAML::Key << "decision" << YAML::Value << YAML::BeginMap << YAML::Key << "u_none"
      << YAML::Value;
  if (c.u_none.empty()) {
    out << "auto";
  } else {
    out << YAML::BeginMap;
    for (const auto& [level, v] : c.u_none) {
      out << YAML::Key << "n" + std::to_string(level) << YAML::Value << num(v);
    }
    out << YAML::EndMap;
  }
  out << YAML::Key << "observation_noise" << YAML::Value << num(c.observation_noise) << YAML::EndMap;
  if (c.population) {
    const auto& p = *c.population;
    auto names = [](const std::vector<Outcome>& os) {
      std::vector<std::string> v;
      for (const auto& o : os) v.push_back(o.to_string());
      return v;
    };
    out << YAML::Key << "population" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "families" << YAML::Value << YAML::BeginMap;
    for (const auto& [f, w] : p.family_weights) {
      out << YAML::Key << std::string(to_string(f)) << YAML::Value << num(w);
    }
    out << YAML::EndMap;
    out << YAML::Key << "bias" << YAML::Value << YAML::BeginMap
        << YAML::Key << "attenuation" << YAML::Value << num(p.bias.attenuation)
        << YAML::Key << "inflation" << YAML::Value << num(p.bias.inflation)
        << YAML::Key << "decay" << YAML::Value << num(p.bias.decay)
        << YAML::Key << "attenuated" << YAML::Value << YAML::Flow << names(p.bias.attenuated)
        << YAML::Key << "inflated" << YAML::Value << YAML::Flow << names(p.bias.inflated)
        << YAML::EndMap;
    out << YAML::Key << "response" << YAML::Value << YAML::BeginMap
        << YAML::Key << "mode" << YAML::Value
        << (p.response.mode == ResponseModel::Mode::kLogistic ? "logistic" : "deterministic")
        << YAML::Key << "temperature_conceptual" << YAML::Value << num(p.response.temperature_conceptual)
        << YAML::Key << "temperature_experiential" << YAML::Value
        << num(p.response.temperature_experiential)
        << YAML::Key << "lapse" << YAML::Value << num(p.response.lapse) << YAML::EndMap;
    out << YAML::Key << "conditions" << YAML::Value << YAML::BeginSeq;
    for (const auto& cond : p.conditions) {
      out << YAML::Flow << YAML::BeginMap << YAML::Key << "label" << YAML::Value << cond.label
          << YAML::Key << "protocol" << YAML::Value << std::string(to_string(cond.protocol))
          << YAML::Key << "count" << YAML::Value << cond.count << YAML::EndMap;
    }
    out << YAML::EndSeq << YAML::EndMap;
  }
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace expelicit
