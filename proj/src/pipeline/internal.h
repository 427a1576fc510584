// src/pipeline/internal.h

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

#ifndef IDR_PIPELINE_INTERNAL_H_
#define IDR_PIPELINE_INTERNAL_H_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <filesystem>
#include <functional>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "idr/pipeline/stages.h"

namespace idr::pipeline::detail {

namespace fs = std::filesystem;

struct StageContext {
  const PipelineConfig &cfg;
  Stage stage;
  fs::path dir;  // this stage's output directory, created empty
  nlohmann::ordered_json counts = nlohmann::ordered_json::object();
  EventLog *log = nullptr;

  fs::path of(Stage s) const { return stage_dir(cfg, s); }
  void event(std::string_view name, nlohmann::ordered_json fields = nlohmann::ordered_json::object()) const {
    if (!log) return;
    fields["stage"] = std::string(stage_name(stage));
    log->emit(name, std::move(fields));
  }
};

// Files outside the output tree that a stage reads.
std::vector<fs::path> external_inputs(Stage s, const PipelineConfig &cfg);

void run_ingest(StageContext &ctx);
void run_mine(StageContext &ctx);
void run_segment(StageContext &ctx);
void run_align(StageContext &ctx);
void run_prosody(StageContext &ctx);
void run_assemble(StageContext &ctx);
void run_split(StageContext &ctx);
void run_stats(StageContext &ctx);
void run_train(StageContext &ctx);
void run_eval(StageContext &ctx);
void run_compare(StageContext &ctx);
void run_review_export(StageContext &ctx);
void run_review_import(StageContext &ctx);

// Runs fn(i) for i in [0, n) on worker threads; the first exception is
// rethrown after all workers finish.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)> &fn) {
  const std::size_t workers = std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto &t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace idr::pipeline::detail

#endif  // IDR_PIPELINE_INTERNAL_H_
