// include/idr/pipeline/config.h

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

#ifndef IDR_PIPELINE_CONFIG_H_
#define IDR_PIPELINE_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "idr/base/error.h"
#include "idr/dataset/split.h"
#include "idr/fusion/config.h"
#include "idr/mining/align.h"

namespace idr::pipeline {

// Configuration problems; the CLI maps these to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class SegmenterMode { kFallback, kFixture, kHttp, kCommand };

struct SegmenterSettings {
  SegmenterMode mode = SegmenterMode::kFallback;
  std::filesystem::path fixture;
  std::string address;
  std::vector<std::string> command;
  bool few_shot = true;
  bool fallback = true;
  int max_in_flight = 4;
  int timeout_ms = 30000;
};

struct PipelineConfig {
  std::filesystem::path base_dir;  // relative paths resolve against this
  std::filesystem::path output_dir;
  std::uint64_t seed = 13;

  std::filesystem::path talks;  // registry JSON
  std::filesystem::path subtitles_dir;  // <talk>.<lang>.srt or .json
  std::filesystem::path asr_dir;        // <talk>.words.jsonl
  std::filesystem::path audio_dir;      // registry audio paths resolve here

  std::map<std::string, std::filesystem::path> lexicons;  // language -> TSV
  std::map<std::string, std::vector<std::string>> language_pairs;  // source -> witnesses
  mining::AlignTolerance tolerance;

  SegmenterSettings segmenter;
  double align_threshold = 0.3;

  std::map<std::string, dataset::SplitSpec> splits;  // per language; others use defaults

  std::string model = "fusion";  // fusion, tfidf, prosodic, prosodic+tfidf
  fusion::FusionConfig fusion;
  fusion::TrainConfig train;
  double baseline_lambda = 1e-3;

  std::filesystem::path gold;

  int review_sample_size = 100;
  std::uint64_t review_seed = 1;
  std::vector<std::filesystem::path> verdicts;

  // Throws ConfigError naming the first problem: missing paths, pairs
  // without lexicons, bad ratios, invalid model settings.
  void validate() const;

  // Canonical JSON of one stage's settings; part of that stage's
  // provenance fingerprint.
  nlohmann::json section(std::string_view stage) const;

  std::filesystem::path resolve(const std::filesystem::path &p) const;
};

// A given seed replaces the file's top-level seed before anything derives
// from it.
PipelineConfig parse_config(std::string_view toml_text, const std::filesystem::path &base_dir,
                            std::optional<std::uint64_t> seed = std::nullopt);
PipelineConfig load_config(const std::filesystem::path &path, std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace idr::pipeline

#endif  // IDR_PIPELINE_CONFIG_H_
