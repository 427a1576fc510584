// src/mining/align.cc

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

#include "idr/mining/align.h"

#include <algorithm>
#include <cstdio>

namespace idr::mining {

std::int64_t time_overlap_ms(const corpus::SubtitleSegment &a,
                             const corpus::SubtitleSegment &b) {
  return std::max<std::int64_t>(
      0, std::min(a.end_ms, b.end_ms) - std::max(a.start_ms, b.start_ms));
}

std::vector<CandidatePair> align_segment_pairs(
    const std::vector<corpus::SubtitleSegment> &source,
    const std::vector<corpus::SubtitleSegment> &target,
    const std::string &target_language, const AlignTolerance &tolerance,
    std::vector<ExcludedPair> *excluded) {
  const std::size_t n = source.size(), m = target.size();
  // best[i][j]: max total overlap matching source[0,i) with target[0,j)
  std::vector<std::vector<std::int64_t>> best(n + 1, std::vector<std::int64_t>(m + 1, 0));
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      std::int64_t v = std::max(best[i - 1][j], best[i][j - 1]);
      std::int64_t ov = time_overlap_ms(source[i - 1], target[j - 1]);
      if (ov > 0) v = std::max(v, best[i - 1][j - 1] + ov);
      best[i][j] = v;
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> matched;
  std::size_t i = n, j = m;
  while (i > 0 && j > 0) {
    std::int64_t ov = time_overlap_ms(source[i - 1], target[j - 1]);
    if (ov > 0 && best[i][j] == best[i - 1][j - 1] + ov) {
      matched.emplace_back(i - 1, j - 1);
      --i;
      --j;
    } else if (best[i][j] == best[i - 1][j]) {
      --i;
    } else {
      --j;
    }
  }
  std::reverse(matched.begin(), matched.end());

  std::vector<CandidatePair> out;
  for (auto [si, ti] : matched) {
    const auto &s = source[si];
    const auto &t = target[ti];
    CandidatePair p;
    p.source_segment = s;
    p.target_segment = t;
    p.target_language = target_language;
    p.duration_ratio = static_cast<double>(t.duration_ms()) / static_cast<double>(s.duration_ms());
    p.overlap_fraction = static_cast<double>(time_overlap_ms(s, t)) /
                         static_cast<double>(std::min(s.duration_ms(), t.duration_ms()));
    bool ratio_ok = p.duration_ratio >= tolerance.min_ratio && p.duration_ratio <= tolerance.max_ratio;
    bool overlap_ok = p.overlap_fraction >= tolerance.min_overlap;
    if (ratio_ok && overlap_ok) {
      out.push_back(std::move(p));
    } else if (excluded) {
      char buf[128];
      if (!ratio_ok)
        std::snprintf(buf, sizeof(buf), "duration ratio %.3f outside [%.3g, %.3g]",
                      p.duration_ratio, tolerance.min_ratio, tolerance.max_ratio);
      else
        std::snprintf(buf, sizeof(buf), "overlap %.3f of shorter segment below %.3g",
                      p.overlap_fraction, tolerance.min_overlap);
      excluded->push_back({std::move(p), buf});
    }
  }
  return out;
}

}  // namespace idr::mining
