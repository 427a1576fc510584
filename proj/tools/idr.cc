// tools/idr.cc

// Copyright 2026  The idrkit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// idr: runs the mining, dataset and training pipeline from a TOML config.
//
//   idr run all --config idr.toml
//   idr run mine segment --config idr.toml --force
//   idr run all --config idr.toml --dry-run
//   idr fixture <dir>
//
// Exit codes: 0 success, 2 config error, 3 upstream missing, 4 stage failure.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "idr/pipeline/config.h"
#include "idr/pipeline/fixture.h"
#include "idr/pipeline/stages.h"

namespace fs = std::filesystem;
using namespace idr;
using namespace idr::pipeline;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitUpstream = 3;
constexpr int kExitStage = 4;

struct RunArgs {
  std::vector<std::string> stages;
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> verdicts;
  bool dry_run = false;
  bool force = false;
  bool quiet = false;
};

int fail(int code, std::string_view what) {
  std::cerr << "idr: " << what << "\n";
  return code;
}

int run(const RunArgs &a) {
  PipelineConfig cfg;
  std::vector<Stage> stages;
  try {
    cfg = load_config(a.config, a.seed);
    if (!a.out.empty()) cfg.output_dir = fs::absolute(a.out);
    for (const auto &v : a.verdicts) cfg.verdicts.push_back(fs::absolute(v));
    cfg.validate();
    if (a.stages.size() == 1 && a.stages[0] == "all") {
      stages = default_sequence(cfg);
    } else {
      for (const auto &s : a.stages) stages.push_back(parse_stage(s));
    }
  } catch (const ConfigError &e) {
    return fail(kExitConfig, std::string("config error: ") + e.what());
  } catch (const Error &e) {
    return fail(kExitConfig, std::string("config error: ") + e.what());
  }

  if (a.dry_run) {
    for (const auto &r : plan(stages, cfg)) std::cout << r.to_json().dump() << "\n";
    return 0;
  }

  EventLog log(cfg.output_dir / "logs" / "events.jsonl", !a.quiet);
  RunOptions opts{a.force, &log};
  for (Stage s : stages) {
    try {
      auto report = run_stage(s, cfg, opts);
      std::cout << report.to_json().dump() << "\n" << std::flush;
    } catch (const UpstreamMissing &e) {
      return fail(kExitUpstream, e.what());
    } catch (const ConfigError &e) {
      log.emit("stage_failed", {{"stage", std::string(stage_name(s))}, {"error", e.what()}});
      return fail(kExitConfig, std::string("config error: ") + e.what());
    } catch (const std::exception &e) {
      log.emit("stage_failed", {{"stage", std::string(stage_name(s))}, {"error", e.what()}});
      return fail(kExitStage, "stage " + std::string(stage_name(s)) + " failed: " + e.what());
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Mine multimodal implicit discourse relations and train classifiers on them."};
  app.require_subcommand(1);

  RunArgs ra;
  auto *run_cmd = app.add_subcommand("run", "Run pipeline stages ('all' for the default sequence)");
  run_cmd->add_option("stages", ra.stages, "Stages: ingest mine segment align prosody assemble split stats "
                                           "train eval compare review-export review-import, or all")
      ->required();
  run_cmd->add_option("-c,--config", ra.config, "TOML config file")->required();
  run_cmd->add_option("-o,--out", ra.out, "Output directory (overrides output_dir)");
  run_cmd->add_option("--seed", ra.seed, "Global seed (overrides seed)");
  run_cmd->add_option("--verdicts", ra.verdicts, "Verdict JSONL files for review-import");
  run_cmd->add_flag("--dry-run", ra.dry_run, "Print the stage plan without running anything");
  run_cmd->add_flag("--force", ra.force, "Re-run stages even when up to date");
  run_cmd->add_flag("-q,--quiet", ra.quiet, "Do not echo events to stderr");

  std::string fixture_dir;
  auto *fixture_cmd = app.add_subcommand("fixture", "Write the planted three-talk demo corpus and its config");
  fixture_cmd->add_option("dir", fixture_dir, "Target directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  if (*run_cmd) return run(ra);
  if (*fixture_cmd) {
    try {
      std::cout << write_planted_fixture(fixture_dir).string() << "\n";
    } catch (const std::exception &e) {
      return fail(kExitStage, e.what());
    }
  }
  return 0;
}
