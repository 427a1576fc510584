// src/pipeline/stages.cc

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

#include "idr/pipeline/stages.h"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <iostream>

#include "idr/base/hash.h"
#include "idr/base/io.h"
#include "internal.h"

namespace idr::pipeline {

namespace fs = std::filesystem;
using detail::StageContext;

namespace {

constexpr std::string_view kTool = "idrkit-pipeline-1";
constexpr const char *kStageFile = "stage.json";

struct StageInfo {
  Stage stage;
  std::string_view name;
  std::vector<Stage> upstream;
  void (*run)(StageContext &);
};

const std::vector<StageInfo> &table() {
  static const std::vector<StageInfo> t = {
      {Stage::kIngest, "ingest", {}, detail::run_ingest},
      {Stage::kMine, "mine", {Stage::kIngest}, detail::run_mine},
      {Stage::kSegment, "segment", {Stage::kIngest, Stage::kMine}, detail::run_segment},
      {Stage::kAlign, "align", {Stage::kIngest, Stage::kSegment}, detail::run_align},
      {Stage::kProsody, "prosody", {Stage::kIngest, Stage::kAlign}, detail::run_prosody},
      {Stage::kAssemble,
       "assemble",
       {Stage::kMine, Stage::kSegment, Stage::kAlign, Stage::kProsody},
       detail::run_assemble},
      {Stage::kSplit, "split", {Stage::kAssemble}, detail::run_split},
      {Stage::kStats, "stats", {Stage::kSplit}, detail::run_stats},
      {Stage::kTrain, "train", {Stage::kSplit, Stage::kProsody}, detail::run_train},
      {Stage::kEval, "eval", {Stage::kTrain, Stage::kSplit, Stage::kProsody}, detail::run_eval},
      {Stage::kCompare, "compare", {Stage::kAssemble}, detail::run_compare},
      {Stage::kReviewExport, "review-export", {Stage::kSplit, Stage::kAlign}, detail::run_review_export},
      {Stage::kReviewImport, "review-import", {Stage::kReviewExport, Stage::kSplit}, detail::run_review_import},
  };
  return t;
}

const StageInfo &info(Stage s) { return table()[static_cast<std::size_t>(s)]; }

// Relative path -> sha256 of every regular file under dir except stage.json.
std::map<std::string, std::string> hash_tree(const fs::path &dir) {
  std::map<std::string, std::string> out;
  if (!fs::exists(dir)) return out;
  for (const auto &e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    const std::string rel = fs::relative(e.path(), dir).generic_string();
    if (rel == kStageFile) continue;
    out[rel] = sha256_file(e.path());
  }
  return out;
}

std::optional<nlohmann::json> read_stage_file(const fs::path &dir) {
  const fs::path p = dir / kStageFile;
  if (!fs::exists(p)) return std::nullopt;
  try {
    return nlohmann::json::parse(read_file(p));
  } catch (const std::exception &) {
    return std::nullopt;
  }
}

// Upstream stages without a completed stage.json.
std::vector<Stage> missing_upstream(Stage s, const PipelineConfig &cfg) {
  std::vector<Stage> missing;
  for (Stage u : info(s).upstream)
    if (!read_stage_file(stage_dir(cfg, u))) missing.push_back(u);
  return missing;
}

std::string fingerprint(Stage s, const PipelineConfig &cfg) {
  nlohmann::json j;
  j["tool"] = kTool;
  j["stage"] = info(s).name;
  j["config"] = cfg.section(info(s).name);
  for (Stage u : info(s).upstream) {
    auto rec = read_stage_file(stage_dir(cfg, u));
    j["upstream"][std::string(info(u).name)] = rec ? (*rec)["outputs"] : nlohmann::json(nullptr);
  }
  nlohmann::json files = nlohmann::json::object();
  for (const auto &p : detail::external_inputs(s, cfg))
    files[p.lexically_relative(cfg.base_dir).generic_string()] = fs::exists(p) ? sha256_file(p) : "";
  j["inputs"] = files;
  return sha256_hex(j.dump());
}

std::string upstream_message(Stage s, const std::vector<Stage> &missing) {
  std::string names;
  for (Stage u : missing) names += (names.empty() ? "" : ", ") + std::string(info(u).name);
  return "stage '" + std::string(info(s).name) + "' needs the outputs of " + names + "; run `idr run " +
         std::string(info(missing.front()).name) + "` first";
}

bool outputs_intact(const nlohmann::json &rec, const fs::path &dir) {
  std::map<std::string, std::string> recorded = rec.value("outputs", std::map<std::string, std::string>{});
  return recorded == hash_tree(dir);
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday,
                tm.tm_hour, tm.tm_min, tm.tm_sec, static_cast<int>(ms));
  return buf;
}

}  // namespace

const std::vector<Stage> &all_stages() {
  static const std::vector<Stage> all = [] {
    std::vector<Stage> v;
    for (const auto &i : table()) v.push_back(i.stage);
    return v;
  }();
  return all;
}

std::string_view stage_name(Stage s) { return info(s).name; }

Stage parse_stage(std::string_view name) {
  for (const auto &i : table())
    if (i.name == name) return i.stage;
  throw ConfigError("unknown stage '" + std::string(name) + "'");
}

const std::vector<Stage> &upstream_of(Stage s) { return info(s).upstream; }

fs::path stage_dir(const PipelineConfig &cfg, Stage s) { return cfg.output_dir / std::string(info(s).name); }

EventLog::EventLog(const fs::path &path, bool echo_stderr) : echo_(echo_stderr) {
  if (!path.empty()) {
    fs::create_directories(path.parent_path());
    out_.open(path, std::ios::app);
  }
}

void EventLog::emit(std::string_view event, nlohmann::ordered_json fields) {
  nlohmann::ordered_json j;
  j["ts"] = utc_now();
  j["event"] = std::string(event);
  for (auto &[k, v] : fields.items()) j[k] = v;
  const std::string line = j.dump();
  std::lock_guard lock(mu_);
  if (out_.is_open()) out_ << line << '\n' << std::flush;
  if (echo_) std::cerr << line << '\n';
}

nlohmann::ordered_json StageReport::to_json() const {
  nlohmann::ordered_json j;
  j["stage"] = std::string(stage_name(stage));
  j["status"] = status;
  if (!detail.empty()) j["detail"] = detail;
  j["fingerprint"] = fingerprint;
  j["counts"] = counts;
  return j;
}

StageReport run_stage(Stage s, const PipelineConfig &cfg, const RunOptions &options) {
  StageReport report;
  report.stage = s;
  if (auto missing = missing_upstream(s, cfg); !missing.empty()) {
    if (options.log) options.log->emit("upstream_missing", {{"stage", std::string(stage_name(s))}});
    throw UpstreamMissing(upstream_message(s, missing));
  }
  const fs::path dir = stage_dir(cfg, s);
  report.fingerprint = fingerprint(s, cfg);

  if (!options.force) {
    if (auto rec = read_stage_file(dir);
        rec && rec->value("fingerprint", "") == report.fingerprint && outputs_intact(*rec, dir)) {
      report.status = "up-to-date";
      report.counts = (*rec)["counts"];
      report.outputs = (*rec)["outputs"].get<std::map<std::string, std::string>>();
      if (options.log)
        options.log->emit("up_to_date", {{"stage", std::string(stage_name(s))}, {"fingerprint", report.fingerprint}});
      return report;
    }
  }

  fs::remove_all(dir);
  fs::create_directories(dir);
  StageContext ctx{cfg, s, dir, nlohmann::ordered_json::object(), options.log};
  ctx.event("stage_start", {{"fingerprint", report.fingerprint}});
  const auto t0 = std::chrono::steady_clock::now();
  info(s).run(ctx);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  report.status = "ran";
  report.counts = ctx.counts;
  report.outputs = hash_tree(dir);
  nlohmann::ordered_json rec;
  rec["stage"] = std::string(stage_name(s));
  rec["tool"] = kTool;
  rec["fingerprint"] = report.fingerprint;
  rec["counts"] = report.counts;
  rec["outputs"] = report.outputs;
  write_file(dir / kStageFile, rec.dump(2) + "\n");
  ctx.event("stage_done", {{"seconds", seconds}, {"counts", report.counts}});
  return report;
}

std::vector<StageReport> plan(const std::vector<Stage> &stages, const PipelineConfig &cfg) {
  std::vector<StageReport> out;
  std::set<Stage> will_run;
  for (Stage s : stages) {
    StageReport r;
    r.stage = s;
    std::vector<Stage> missing;
    for (Stage u : missing_upstream(s, cfg))
      if (!will_run.count(u)) missing.push_back(u);
    if (!missing.empty()) {
      r.status = "blocked";
      r.detail = upstream_message(s, missing);
      out.push_back(r);
      continue;
    }
    bool upstream_changes = false;
    for (Stage u : info(s).upstream) upstream_changes = upstream_changes || will_run.count(u);
    if (!upstream_changes) {
      r.fingerprint = fingerprint(s, cfg);
      auto rec = read_stage_file(stage_dir(cfg, s));
      if (rec && rec->value("fingerprint", "") == r.fingerprint && outputs_intact(*rec, stage_dir(cfg, s))) {
        r.status = "up-to-date";
        out.push_back(r);
        continue;
      }
    }
    r.status = "would run";
    will_run.insert(s);
    out.push_back(r);
  }
  return out;
}

std::vector<Stage> default_sequence(const PipelineConfig &cfg) {
  std::vector<Stage> seq = {Stage::kIngest,   Stage::kMine,  Stage::kSegment, Stage::kAlign,
                            Stage::kProsody,  Stage::kAssemble, Stage::kSplit, Stage::kStats,
                            Stage::kTrain,    Stage::kEval};
  if (!cfg.gold.empty()) seq.push_back(Stage::kCompare);
  seq.push_back(Stage::kReviewExport);
  if (!cfg.verdicts.empty()) seq.push_back(Stage::kReviewImport);
  return seq;
}

}  // namespace idr::pipeline
