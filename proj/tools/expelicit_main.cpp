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

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "expelicit/http_api.hpp"
#include "expelicit/session_manager.hpp"
#include "expelicit/study.hpp"
#include "expelicit/study_config.hpp"

namespace fs = std::filesystem;
using namespace expelicit;

namespace {

StudyConfig load_config(const std::string& path, std::optional<std::uint64_t> seed) {
  StudyConfig c = path.empty() ? StudyConfig::defaults() : load_study_config(path);
  if (seed) c.run.seed = *seed;
  return c;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kInvalidConfig, "cannot write " + path);
  out << text;
}

std::pair<std::string, std::string> split_labels(const std::string& labels,
                                                 const std::string& a, const std::string& b) {
  if (labels.empty()) return {fs::path(a).filename().string(), fs::path(b).filename().string()};
  const auto comma = labels.find(',');
  if (comma == std::string::npos) {
    throw Error(ErrorCode::kInvalidConfig, "--labels expects two names separated by a comma");
  }
  return {labels.substr(0, comma), labels.substr(comma + 1)};
}

HttpServer* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Experiential utility elicitation: simulate, serve and analyze studies"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;

  auto* simulate = app.add_subcommand("simulate", "Run a synthetic study and write one log per respondent");
  std::string sim_out = "study-logs";
  bool normalize = false;
  simulate->add_option("-c,--config", config_path, "Study config (YAML); defaults when omitted");
  simulate->add_option("-s,--seed", seed, "Override the study seed");
  simulate->add_option("-o,--out", sim_out, "Output directory")->capture_default_str();
  simulate->add_flag("--normalize-timestamps", normalize, "Write blank timestamps");

  auto* serve = app.add_subcommand("serve", "Host the session API and UI assets");
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string log_dir;
  std::string ui_dir;
  serve->add_option("-c,--config", config_path, "Study config (YAML)");
  serve->add_option("-s,--seed", seed, "Override the study seed");
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("-p,--port", port)->capture_default_str();
  serve->add_option("-o,--out", log_dir, "Session log directory (enables persistence)");
  serve->add_option("--ui", ui_dir, "Directory of static UI assets");

  auto* analyze = app.add_subcommand("analyze", "Compare two conditions from their log directories");
  std::string dir_a, dir_b, labels, csv_out, text_out;
  double alpha = 0.05;
  analyze->add_option("dir_a", dir_a, "Condition A logs")->required()->check(CLI::ExistingDirectory);
  analyze->add_option("dir_b", dir_b, "Condition B logs")->required()->check(CLI::ExistingDirectory);
  analyze->add_option("-a,--alpha", alpha, "Significance level")->capture_default_str();
  analyze->add_option("-l,--labels", labels, "Condition names as A,B");
  analyze->add_option("--csv", csv_out, "Write the comma-separated table here");
  analyze->add_option("-o,--out", text_out, "Write the text table here instead of stdout");

  auto* export_cmd = app.add_subcommand("export", "Write the midpoint matrix of a log directory as CSV");
  std::string export_dir, export_out;
  export_cmd->add_option("dir", export_dir, "Log directory")->required()->check(CLI::ExistingDirectory);
  export_cmd->add_option("-o,--out", export_out, "Output file (stdout when omitted)");

  auto* decide = app.add_subcommand("decide", "Evaluate decision scenarios from a JSON file");
  std::string scenarios, decide_out;
  decide->add_option("scenarios", scenarios, "Scenario file")->required()->check(CLI::ExistingFile);
  decide->add_option("-c,--config", config_path, "Study config (YAML)");
  decide->add_option("-o,--out", decide_out, "Output file (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) {
      const StudyConfig study = load_config(config_path, seed);
      const auto files = run_simulated_study(study, sim_out, normalize);
      std::cout << "wrote " << files.size() << " session logs to " << sim_out << "\n";
    } else if (*serve) {
      const StudyConfig study = load_config(config_path, seed);
      SessionManager manager(study, log_dir.empty() ? std::nullopt : std::optional<fs::path>(log_dir));
      HttpServer server(manager, ui_dir.empty() ? std::nullopt : std::optional<fs::path>(ui_dir));
      const int bound = server.bind(host, port);
      g_server = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cout << "listening on http://" << host << ":" << bound << std::endl;
      server.serve();
      g_server = nullptr;
    } else if (*analyze) {
      const auto [la, lb] = split_labels(labels, dir_a, dir_b);
      const auto result = export_and_analyze(load_log_dir(dir_a), load_log_dir(dir_b), la, lb, alpha);
      write_text(text_out, render_analysis_text(result));
      if (!csv_out.empty()) write_text(csv_out, render_analysis_csv(result));
    } else if (*export_cmd) {
      write_text(export_out, render_matrix_csv(midpoint_matrix(load_log_dir(export_dir))));
    } else if (*decide) {
      const StudyConfig study = load_config(config_path, seed);
      std::ifstream in(scenarios);
      const auto input = nlohmann::json::parse(in);
      const auto results = decide_batch(input, study, fs::path(scenarios).parent_path());
      write_text(decide_out, results.dump(2) + "\n");
    }
  } catch (const ConfigError& e) {
    std::cerr << e.message() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
