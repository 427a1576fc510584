// include/idr/pipeline/stages.h

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

#ifndef IDR_PIPELINE_STAGES_H_
#define IDR_PIPELINE_STAGES_H_

#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "idr/base/error.h"
#include "idr/pipeline/config.h"

namespace idr::pipeline {

enum class Stage {
  kIngest,
  kMine,
  kSegment,
  kAlign,
  kProsody,
  kAssemble,
  kSplit,
  kStats,
  kTrain,
  kEval,
  kCompare,
  kReviewExport,
  kReviewImport,
};

const std::vector<Stage> &all_stages();
std::string_view stage_name(Stage s);
Stage parse_stage(std::string_view name);  // throws ConfigError
const std::vector<Stage> &upstream_of(Stage s);

// A required upstream artifact is absent; exit code 3.
class UpstreamMissing : public Error {
 public:
  using Error::Error;
};

// Append-only JSONL event log. Events carry a UTC timestamp, so the log is
// kept outside the stage outputs that provenance hashes.
class EventLog {
 public:
  EventLog() = default;
  EventLog(const std::filesystem::path &path, bool echo_stderr);
  void emit(std::string_view event, nlohmann::ordered_json fields = nlohmann::ordered_json::object());

 private:
  std::mutex mu_;
  std::ofstream out_;
  bool echo_ = false;
};

struct RunOptions {
  bool force = false;
  EventLog *log = nullptr;
};

struct StageReport {
  Stage stage = Stage::kIngest;
  std::string status;  // "ran", "up-to-date", "would run", "blocked"
  std::string fingerprint;
  std::string detail;
  nlohmann::ordered_json counts = nlohmann::ordered_json::object();
  std::map<std::string, std::string> outputs;  // relative path -> sha256

  nlohmann::ordered_json to_json() const;
};

std::filesystem::path stage_dir(const PipelineConfig &cfg, Stage s);

// Runs one stage, or reports "up-to-date" without work when the stage's
// fingerprint and recorded output hashes still match.
StageReport run_stage(Stage s, const PipelineConfig &cfg, const RunOptions &options = {});

// What run_stage would do, without doing it. Stages blocked by an earlier
// planned stage are reported as "would run" when that stage would produce
// the missing artifact.
std::vector<StageReport> plan(const std::vector<Stage> &stages, const PipelineConfig &cfg);

// Stage order for "all".
std::vector<Stage> default_sequence(const PipelineConfig &cfg);

}  // namespace idr::pipeline

#endif  // IDR_PIPELINE_STAGES_H_
