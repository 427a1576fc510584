// include/idr/segment/port.h

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

#ifndef IDR_SEGMENT_PORT_H_
#define IDR_SEGMENT_PORT_H_

#include <sys/types.h>

#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "idr/base/error.h"
#include "idr/segment/context.h"
#include "idr/segment/spans.h"

namespace idr::segment {

class PortError : public Error {
 public:
  using Error::Error;
};

struct SegmenterRequest {
  std::string context;  // marked text
  std::string marker_open{kMarkerOpen};
  std::string marker_close{kMarkerClose};
  bool few_shot = true;

  nlohmann::json to_json() const;
  // SHA-256 of the canonical JSON; keys fixtures.
  std::string hash() const;
};

SegmenterRequest request_for(const ContextWindow &ctx, bool few_shot = true);

struct SegmenterResponse {
  std::string arg1_text;
  std::string arg2_text;

  nlohmann::json to_json() const;
  static SegmenterResponse from_json(const nlohmann::json &j);
};

// Implementations must be safe to call from several threads.
class SegmenterPort {
 public:
  virtual ~SegmenterPort() = default;
  virtual SegmenterResponse segment(const SegmenterRequest &request) = 0;
};

// Replays recorded responses: JSONL lines {"request_hash", "response"}.
class FixtureSegmenter : public SegmenterPort {
 public:
  explicit FixtureSegmenter(const std::filesystem::path &path);
  explicit FixtureSegmenter(std::map<std::string, SegmenterResponse> table);
  SegmenterResponse segment(const SegmenterRequest &request) override;
  std::size_t size() const { return table_.size(); }

 private:
  std::map<std::string, SegmenterResponse> table_;
};

// Forwards to another port and keeps every exchange for write_fixture().
class RecordingSegmenter : public SegmenterPort {
 public:
  explicit RecordingSegmenter(SegmenterPort &inner) : inner_(inner) {}
  SegmenterResponse segment(const SegmenterRequest &request) override;
  std::string fixture_jsonl() const;

 private:
  SegmenterPort &inner_;
  mutable std::mutex mu_;
  std::map<std::string, SegmenterResponse> seen_;
};

class FunctionSegmenter : public SegmenterPort {
 public:
  using Fn = std::function<SegmenterResponse(const SegmenterRequest &)>;
  explicit FunctionSegmenter(Fn fn) : fn_(std::move(fn)) {}
  SegmenterResponse segment(const SegmenterRequest &request) override { return fn_(request); }

 private:
  Fn fn_;
};

// One request per line on the child's stdin, one JSON response per line
// on its stdout. Calls are serialized.
class SubprocessSegmenter : public SegmenterPort {
 public:
  explicit SubprocessSegmenter(std::vector<std::string> argv, int timeout_ms = 30000);
  ~SubprocessSegmenter() override;
  SubprocessSegmenter(const SubprocessSegmenter &) = delete;
  SubprocessSegmenter &operator=(const SubprocessSegmenter &) = delete;
  SegmenterResponse segment(const SegmenterRequest &request) override;

 private:
  std::string read_line();

  std::mutex mu_;
  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  int timeout_ms_;
  std::string buffer_;
};

// POSTs the request JSON to `url` (scheme://host:port/path).
class HttpSegmenter : public SegmenterPort {
 public:
  explicit HttpSegmenter(std::string url, int timeout_ms = 30000);
  SegmenterResponse segment(const SegmenterRequest &request) override;

 private:
  std::string base_;
  std::string path_;
  int timeout_ms_;
};

struct SegmentOptions {
  bool few_shot = true;
  bool fallback = true;
};

struct SegmentOutcome {
  std::optional<ArgSpans> spans;
  std::string external_error;  // why the external answer was not used
  std::string reason;          // set when no spans
};

// External port first (if any), fallback on failure.
SegmentOutcome segment_arguments(const ContextWindow &ctx, SegmenterPort *port,
                                 const SegmentOptions &options = {});

struct SegmentJob {
  std::string instance_id;
  ContextWindow ctx;
};

struct SegmentResult {
  std::string instance_id;
  SegmentOutcome outcome;
};

// Runs jobs with at most max_in_flight concurrent port calls; results come
// back sorted by instance_id.
std::vector<SegmentResult> segment_all(const std::vector<SegmentJob> &jobs, SegmenterPort *port,
                                       const SegmentOptions &options = {},
                                       std::size_t max_in_flight = 4);

}  // namespace idr::segment

#endif  // IDR_SEGMENT_PORT_H_
