// src/segment/port.cc

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

#include "idr/segment/port.h"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cstring>
#include <thread>

#include <httplib.h>

#include "idr/base/hash.h"
#include "idr/base/io.h"

namespace idr::segment {
namespace {

std::string strip_markers(std::string s) {
  for (const auto &m : {std::string(kMarkerOpen), std::string(kMarkerClose)}) {
    for (auto p = s.find(m); p != std::string::npos; p = s.find(m)) s.erase(p, m.size());
  }
  return s;
}

}  // namespace

nlohmann::json SegmenterRequest::to_json() const {
  return {{"context", context},
          {"markers", {{"open", marker_open}, {"close", marker_close}}},
          {"few_shot", few_shot}};
}

std::string SegmenterRequest::hash() const { return sha256_hex(to_json().dump()); }

SegmenterRequest request_for(const ContextWindow &ctx, bool few_shot) {
  SegmenterRequest r;
  r.context = ctx.marked_text;
  r.few_shot = few_shot;
  return r;
}

nlohmann::json SegmenterResponse::to_json() const {
  return {{"arg1_text", arg1_text}, {"arg2_text", arg2_text}};
}

SegmenterResponse SegmenterResponse::from_json(const nlohmann::json &j) {
  if (!j.is_object()) throw PortError("segmenter response is not an object");
  if (j.contains("error")) throw PortError("segmenter reported: " + j["error"].dump());
  if (!j.contains("arg1_text") || !j.contains("arg2_text") || !j["arg1_text"].is_string() ||
      !j["arg2_text"].is_string())
    throw PortError("segmenter response lacks arg1_text/arg2_text");
  return {j["arg1_text"].get<std::string>(), j["arg2_text"].get<std::string>()};
}

FixtureSegmenter::FixtureSegmenter(const std::filesystem::path &path) {
  for (const auto &row : parse_jsonl(read_file(path))) {
    if (!row.contains("request_hash") || !row.contains("response"))
      throw ParseError("fixture row needs request_hash and response");
    table_[row["request_hash"].get<std::string>()] = SegmenterResponse::from_json(row["response"]);
  }
}

FixtureSegmenter::FixtureSegmenter(std::map<std::string, SegmenterResponse> table)
    : table_(std::move(table)) {}

SegmenterResponse FixtureSegmenter::segment(const SegmenterRequest &request) {
  auto it = table_.find(request.hash());
  if (it == table_.end()) throw PortError("no recorded response for request " + request.hash());
  return it->second;
}

SegmenterResponse RecordingSegmenter::segment(const SegmenterRequest &request) {
  auto resp = inner_.segment(request);
  std::lock_guard lock(mu_);
  seen_[request.hash()] = resp;
  return resp;
}

std::string RecordingSegmenter::fixture_jsonl() const {
  std::lock_guard lock(mu_);
  std::vector<nlohmann::json> rows;
  for (const auto &[h, r] : seen_) rows.push_back({{"request_hash", h}, {"response", r.to_json()}});
  return to_jsonl(rows);
}

SubprocessSegmenter::SubprocessSegmenter(std::vector<std::string> argv, int timeout_ms)
    : timeout_ms_(timeout_ms) {
  if (argv.empty()) throw ContractError("segmenter command is empty");
  // a dead child must surface as EPIPE, not kill us
  ::signal(SIGPIPE, SIG_IGN);
  int in_pipe[2], out_pipe[2];
  if (::pipe(in_pipe) != 0 || ::pipe(out_pipe) != 0)
    throw PortError(std::string("pipe: ") + std::strerror(errno));
  pid_ = ::fork();
  if (pid_ < 0) throw PortError(std::string("fork: ") + std::strerror(errno));
  if (pid_ == 0) {
    ::dup2(in_pipe[0], STDIN_FILENO);
    ::dup2(out_pipe[1], STDOUT_FILENO);
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    ::close(out_pipe[0]);
    ::close(out_pipe[1]);
    std::vector<char *> args;
    for (auto &a : argv) args.push_back(a.data());
    args.push_back(nullptr);
    ::execvp(args[0], args.data());
    ::_exit(127);
  }
  ::close(in_pipe[0]);
  ::close(out_pipe[1]);
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
  ::fcntl(to_child_, F_SETFD, FD_CLOEXEC);
  ::fcntl(from_child_, F_SETFD, FD_CLOEXEC);
}

SubprocessSegmenter::~SubprocessSegmenter() {
  if (to_child_ >= 0) ::close(to_child_);
  if (from_child_ >= 0) ::close(from_child_);
  if (pid_ > 0) {
    int status = 0;
    for (int i = 0; i < 50; ++i) {
      if (::waitpid(pid_, &status, WNOHANG) != 0) return;
      ::usleep(10000);
    }
    ::kill(pid_, SIGKILL);
    ::waitpid(pid_, &status, 0);
  }
}

std::string SubprocessSegmenter::read_line() {
  for (;;) {
    auto nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return line;
    }
    pollfd pfd{from_child_, POLLIN, 0};
    int rc = ::poll(&pfd, 1, timeout_ms_);
    if (rc == 0) throw PortError("segmenter subprocess timed out");
    if (rc < 0) {
      if (errno == EINTR) continue;
      throw PortError(std::string("poll: ") + std::strerror(errno));
    }
    char chunk[4096];
    ssize_t n = ::read(from_child_, chunk, sizeof chunk);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) throw PortError("segmenter subprocess closed its output");
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

SegmenterResponse SubprocessSegmenter::segment(const SegmenterRequest &request) {
  std::lock_guard lock(mu_);
  std::string line = request.to_json().dump() + "\n";
  std::size_t off = 0;
  while (off < line.size()) {
    ssize_t n = ::write(to_child_, line.data() + off, line.size() - off);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) throw PortError(std::string("write to segmenter: ") + std::strerror(errno));
    off += static_cast<std::size_t>(n);
  }
  std::string reply = read_line();
  try {
    return SegmenterResponse::from_json(nlohmann::json::parse(reply));
  } catch (const nlohmann::json::exception &e) {
    throw PortError(std::string("bad segmenter reply: ") + e.what());
  }
}

HttpSegmenter::HttpSegmenter(std::string url, int timeout_ms) : timeout_ms_(timeout_ms) {
  auto scheme = url.find("://");
  if (scheme == std::string::npos) throw ContractError("segmenter url needs a scheme: " + url);
  auto slash = url.find('/', scheme + 3);
  base_ = url.substr(0, slash);
  path_ = slash == std::string::npos ? "/" : url.substr(slash);
}

SegmenterResponse HttpSegmenter::segment(const SegmenterRequest &request) {
  httplib::Client client(base_);
  auto secs = timeout_ms_ / 1000, usecs = (timeout_ms_ % 1000) * 1000;
  client.set_connection_timeout(secs, usecs);
  client.set_read_timeout(secs, usecs);
  auto res = client.Post(path_, request.to_json().dump(), "application/json");
  if (!res) throw PortError("segmenter http: " + httplib::to_string(res.error()));
  if (res->status != 200) throw PortError("segmenter http status " + std::to_string(res->status));
  try {
    return SegmenterResponse::from_json(nlohmann::json::parse(res->body));
  } catch (const nlohmann::json::exception &e) {
    throw PortError(std::string("bad segmenter reply: ") + e.what());
  }
}

SegmentOutcome segment_arguments(const ContextWindow &ctx, SegmenterPort *port,
                                 const SegmentOptions &options) {
  if (!port && !options.fallback)
    throw ContractError("segmentation needs a port or the fallback");
  SegmentOutcome out;
  if (port) {
    try {
      auto resp = port->segment(request_for(ctx, options.few_shot));
      auto a1 = locate_span(ctx.text, strip_markers(resp.arg1_text));
      std::optional<ByteRange> a2;
      if (a1) a2 = locate_span(ctx.text, strip_markers(resp.arg2_text), a1->end);
      if (!a1 || !a2) {
        out.external_error = "not_substring";
      } else {
        ArgSpans spans{*a1, *a2, SpanSource::kExternal};
        auto check = validate_spans(spans, ctx.text);
        if (check.ok) {
          out.spans = spans;
          return out;
        }
        out.external_error = check.reason;
      }
    } catch (const PortError &e) {
      out.external_error = e.what();
    }
  }
  if (options.fallback) {
    out.spans = fallback_spans(ctx);
    if (out.spans) return out;
  }
  out.reason = port ? "external: " + out.external_error : std::string();
  if (options.fallback) out.reason += std::string(port ? "; " : "") + "fallback: no valid spans";
  return out;
}

std::vector<SegmentResult> segment_all(const std::vector<SegmentJob> &jobs, SegmenterPort *port,
                                       const SegmentOptions &options, std::size_t max_in_flight) {
  std::vector<SegmentResult> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      results[i].instance_id = jobs[i].instance_id;
      try {
        results[i].outcome = segment_arguments(jobs[i].ctx, port, options);
      } catch (const std::exception &e) {
        results[i].outcome.reason = e.what();
      }
    }
  };
  std::size_t n = std::clamp<std::size_t>(max_in_flight, 1, std::max<std::size_t>(jobs.size(), 1));
  if (!port) n = 1;
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto &t : pool) t.join();
  std::stable_sort(results.begin(), results.end(),
                   [](const auto &a, const auto &b) { return a.instance_id < b.instance_id; });
  return results;
}

}  // namespace idr::segment
