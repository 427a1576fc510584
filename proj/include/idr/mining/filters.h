// include/idr/mining/filters.h

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

#ifndef IDR_MINING_FILTERS_H_
#define IDR_MINING_FILTERS_H_

#include <optional>
#include <string>
#include <string_view>

#include "idr/base/drop_reason.h"
#include "idr/mining/detect.h"
#include "idr/mining/types.h"

namespace idr::mining {

struct RuleResult {
  bool passed = true;
  std::optional<DropReason> reason;
  std::string detail;
};

// Individual non-discourse rules. Each looks at the connective occurrence
// inside `text` (the witness segment the hit was found in).

// "so" / "si" / "tan" directly before an adjective or adverb.
RuleResult intensifier_rule(const Explicitation &hit, std::string_view text);
// Connective inside quotation marks.
RuleResult quotation_rule(const Explicitation &hit, std::string_view text);
// Connective is the last word of the segment.
RuleResult final_token_rule(const Explicitation &hit, std::string_view text);
// Connective immediately followed by punctuation other than a comma.
RuleResult filler_rule(const Explicitation &hit, std::string_view text);

struct FilterVerdict {
  bool passed = true;
  std::optional<DropReason> reason;
  std::string detail;
};

// Runs the four rules in order, stopping at the first failure. Every rule
// that ran is appended to `trail`.
FilterVerdict apply_discourse_use_filters(const Explicitation &hit, std::string_view text,
                                          FilterTrail &trail);

// Heuristic word classes used by the intensifier rule.
bool looks_like_adjective_or_adverb(std::string_view word);
bool is_subject_pronoun(std::string_view word);

}  // namespace idr::mining

#endif  // IDR_MINING_FILTERS_H_
