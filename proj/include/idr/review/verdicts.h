// include/idr/review/verdicts.h

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

#ifndef IDR_REVIEW_VERDICTS_H_
#define IDR_REVIEW_VERDICTS_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "idr/dataset/manifest.h"

namespace idr::review {

enum class Decision { kAccept, kReject, kFix };
enum class ErrorClass { kExtraneousContent, kEarlyCut, kNotImplicit, kWrongLabel };

std::string_view decision_name(Decision d);  // "accept", "reject", "fix"
Decision parse_decision(std::string_view s);
std::string_view error_class_name(ErrorClass e);  // "extraneous_content", ...
ErrorClass parse_error_class(std::string_view s);
bool is_segmentation_error(ErrorClass e);

struct CharRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  bool operator==(const CharRange &) const = default;
};

struct CorrectedSpans {
  CharRange arg1, arg2;
  bool operator==(const CorrectedSpans &) const = default;
};

struct Verdict {
  std::string instance_id;
  Decision decision = Decision::kAccept;
  std::optional<ErrorClass> error_class;
  std::optional<CorrectedSpans> corrected_spans;
  std::string reviewer_id;
  std::string timestamp;  // ISO 8601, compared as text

  bool operator==(const Verdict &) const = default;
};

// Throws ValidationError when fix lacks corrected spans, reject lacks an
// error class, or an id is empty.
void validate(const Verdict &v);

nlohmann::ordered_json to_json(const Verdict &v);
Verdict verdict_from_json(const nlohmann::json &j);

// Schema violations throw ParseError carrying the line number.
std::vector<Verdict> parse_verdicts(std::string_view jsonl);

// Canonical JSONL, sorted by (instance_id, reviewer_id). Throws
// ValidationError on an empty list or a repeated (instance, reviewer).
std::string export_verdicts(std::vector<Verdict> verdicts);

// Last writer wins per (instance, reviewer): latest timestamp, then later
// position in the input. Output sorted by (instance_id, reviewer_id).
std::vector<Verdict> merge_verdicts(const std::vector<Verdict> &verdicts);

enum class ReleaseState { kRetained, kExcluded, kNeedsAdjudication };
std::string_view release_state_name(ReleaseState s);  // "retained", "excluded", "needs_adjudication"

struct InstanceReview {
  std::string instance_id;
  ReleaseState state = ReleaseState::kRetained;
  std::vector<std::string> reviewers;
  // The agreed verdict; unset when reviewers disagree.
  std::optional<Verdict> resolved;
};

// Reviewers disagree when their (decision, error class, corrected spans)
// differ; such instances are held back until adjudicated.
std::vector<InstanceReview> resolve(const std::vector<Verdict> &merged);

struct ErrorReport {
  int reviewed = 0;
  int segmentation_errors = 0;  // extraneous_content + early_cut
  int extraneous_content = 0;
  int early_cut = 0;
  int not_implicit = 0;
  int wrong_label = 0;
  int needs_adjudication = 0;
  int excluded = 0;
  double segmentation_rate() const;
  double not_implicit_rate() const;
  double wrong_label_rate() const;

  nlohmann::ordered_json to_json() const;
};

ErrorReport error_report(const std::vector<InstanceReview> &reviews);

// Drops excluded and unadjudicated instances. Instances without a review
// are kept; entries are copied untouched.
dataset::DatasetManifest release_manifest(const dataset::DatasetManifest &m,
                                          const std::vector<InstanceReview> &reviews);

}  // namespace idr::review

#endif  // IDR_REVIEW_VERDICTS_H_
