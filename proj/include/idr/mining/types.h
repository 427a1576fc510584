// include/idr/mining/types.h

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

#ifndef IDR_MINING_TYPES_H_
#define IDR_MINING_TYPES_H_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "idr/corpus/types.h"

namespace idr::mining {

struct CandidatePair {
  corpus::SubtitleSegment source_segment;
  corpus::SubtitleSegment target_segment;
  std::string target_language;
  double duration_ratio = 0.0;  // target duration / source duration
  double overlap_fraction = 0.0;  // overlap / shorter duration
};

struct FilterStep {
  std::string name;
  bool passed = true;
  std::string detail;

  bool operator==(const FilterStep &) const = default;
};

using FilterTrail = std::vector<FilterStep>;

// Replaces the step with the same name, or appends it.
void set_step(FilterTrail &trail, FilterStep step);
bool all_passed(const FilterTrail &trail);

struct ImplicitInstance {
  std::string instance_id;
  std::string talk_id;
  std::string source_language;
  std::string explicit_connective;
  std::string witness_language;
  corpus::RelationLabel label = corpus::RelationLabel::kCauseEffect;
  // previous, current and next source segment indices; -1 at talk edges
  std::array<std::int64_t, 3> context_segment_indices{-1, -1, -1};
  FilterTrail filter_trail;

  // Where the connective sat in the witness segment: sentence ordinal and
  // clause ordinal within that sentence. Segmentation uses these to place
  // the relation inside the source segment.
  int sentence_ordinal = 0;
  int clause_ordinal = 0;
  std::int64_t target_segment_index = -1;
  // Every language that explicitated this (talk, segment, label); sorted.
  std::vector<std::string> witnesses;

  std::int64_t source_index() const { return context_segment_indices[1]; }
  bool operator==(const ImplicitInstance &) const = default;
};

std::string make_instance_id(std::string_view talk_id, std::string_view source_language,
                             std::int64_t source_index, corpus::RelationLabel label);

nlohmann::json to_json(const ImplicitInstance &inst);
ImplicitInstance instance_from_json(const nlohmann::json &j);

}  // namespace idr::mining

#endif  // IDR_MINING_TYPES_H_
