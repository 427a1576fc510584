// include/idr/mining/align.h

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

#ifndef IDR_MINING_ALIGN_H_
#define IDR_MINING_ALIGN_H_

#include <cstdint>
#include <string>
#include <vector>

#include "idr/corpus/types.h"
#include "idr/mining/types.h"

namespace idr::mining {

// Duration-consistency window for a source/target segment pair.
struct AlignTolerance {
  double min_ratio = 0.5;
  double max_ratio = 2.0;
  // time overlap as a fraction of the shorter segment
  double min_overlap = 0.5;
};

struct ExcludedPair {
  CandidatePair pair;
  std::string detail;
};

// Overlap in milliseconds of two segments' time ranges (0 when disjoint).
std::int64_t time_overlap_ms(const corpus::SubtitleSegment &a,
                             const corpus::SubtitleSegment &b);

// One-to-one matching of source to target segments that maximizes total
// time overlap (monotone in time, solved by dynamic programming). Matched
// pairs outside the tolerance window are left out of the result and, if
// `excluded` is given, reported there.
std::vector<CandidatePair> align_segment_pairs(
    const std::vector<corpus::SubtitleSegment> &source,
    const std::vector<corpus::SubtitleSegment> &target,
    const std::string &target_language, const AlignTolerance &tolerance,
    std::vector<ExcludedPair> *excluded = nullptr);

}  // namespace idr::mining

#endif  // IDR_MINING_ALIGN_H_
