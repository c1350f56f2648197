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
#include <optional>
#include <string>
#include <vector>

#include "expelicit/elicitation_run.hpp"
#include "expelicit/error.hpp"
#include "expelicit/respondent_sim.hpp"

namespace expelicit {

struct ConditionSpec {
  std::string label;
  ProtocolKind protocol = ProtocolKind::kConceptual;
  int count = 0;
};

// Synthetic respondents for `simulate`.
struct PopulationSpec {
  std::map<UtilityFamily, double> family_weights;
  BiasModel bias;
  ResponseModel response;
  std::vector<ConditionSpec> conditions;
};

struct StudyConfig {
  std::string name = "study";
  RunConfig run;
  // Explicit no-suggestion utilities per neediness level; empty means "use
  // the midpoint of the shortest lowest-quality toolbar".
  std::map<int, double> u_none;
  double observation_noise = 0.1;
  std::optional<PopulationSpec> population;

  // Default study: 18-outcome grid, k = 10, 13 conceptual and
  // 8 experiential simulated respondents.
  static StudyConfig defaults();

  // Run configuration for one respondent.
  RunConfig run_for(ProtocolKind protocol, std::uint64_t seed) const;
};

struct ConfigDiagnostic {
  int line = 0;    // 1-based; 0 when unknown
  int column = 0;  // 1-based
  std::string field;
  std::string message;
};

// Carries every diagnostic found while reading a study config.
class ConfigError : public Error {
 public:
  ConfigError(std::string source, std::vector<ConfigDiagnostic> diagnostics);
  const std::vector<ConfigDiagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<ConfigDiagnostic> diagnostics_;
};

// Structured-text (YAML) study configuration. Unknown keys and invalid
// values are reported as "source:line:column: field: message".
StudyConfig parse_study_config(const std::string& text, const std::string& source = "<config>");
StudyConfig load_study_config(const std::filesystem::path& path);

// Canonical YAML rendering of a config (round-trips through the parser).
std::string render_study_config(const StudyConfig& config);

}  // namespace expelicit
