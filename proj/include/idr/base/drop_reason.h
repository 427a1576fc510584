// include/idr/base/drop_reason.h

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

#ifndef IDR_BASE_DROP_REASON_H_
#define IDR_BASE_DROP_REASON_H_

#include <string_view>

namespace idr {

// Machine-readable reasons a candidate or instance leaves the pipeline.
enum class DropReason {
  kDurRatio,
  kNoConnective,
  kNotClauseInitial,
  kSrcExplicit,
  kTgtAlternative,
  kNonDiscourseIntensifier,
  kNonDiscourseQuoted,
  kNonDiscourseFinal,
  kNonDiscourseFiller,
  kSegInvalid,
  kUnalignable,
  kDup,
};

constexpr std::string_view drop_code(DropReason r) {
  switch (r) {
    case DropReason::kDurRatio: return "DUR_RATIO";
    case DropReason::kNoConnective: return "NO_CONNECTIVE";
    case DropReason::kNotClauseInitial: return "NOT_CLAUSE_INITIAL";
    case DropReason::kSrcExplicit: return "SRC_EXPLICIT";
    case DropReason::kTgtAlternative: return "TGT_ALTERNATIVE";
    case DropReason::kNonDiscourseIntensifier: return "NON_DISCOURSE_INTENSIFIER";
    case DropReason::kNonDiscourseQuoted: return "NON_DISCOURSE_QUOTED";
    case DropReason::kNonDiscourseFinal: return "NON_DISCOURSE_FINAL";
    case DropReason::kNonDiscourseFiller: return "NON_DISCOURSE_FILLER";
    case DropReason::kSegInvalid: return "SEG_INVALID";
    case DropReason::kUnalignable: return "UNALIGNABLE";
    case DropReason::kDup: return "DUP";
  }
  return "UNKNOWN";
}

}  // namespace idr

#endif  // IDR_BASE_DROP_REASON_H_
