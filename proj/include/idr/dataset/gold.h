// include/idr/dataset/gold.h

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

#ifndef IDR_DATASET_GOLD_H_
#define IDR_DATASET_GOLD_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "idr/corpus/types.h"
#include "idr/dataset/manifest.h"

namespace idr::dataset {

struct GoldRelation {
  std::string talk_id;
  std::int64_t sentence_index = -1;  // sentence holding Arg2
  std::string label_text;
  std::optional<corpus::RelationLabel> label;  // set when the sense maps onto our labels
  bool inter_sentential = true;
};

// JSONL rows {talk_id, sentence_index, label, inter_or_intra}; the last is
// "inter" or "intra". Throws ParseError carrying the row number.
std::vector<GoldRelation> parse_gold_jsonl(std::string_view body);

inline constexpr std::string_view kGoldCriterion = "arg2-sentence-v1";

struct WitnessBreakdown {
  int matching = 0;  // mined instances that hit a gold relation
  int new_inter = 0;
  int intra = 0;
};

// A mined inter-sentential instance matches a gold relation when both name
// the same talk and Arg2 sentence. Label agreement is counted among matches
// whose gold label is comparable but does not affect matching.
struct GoldComparison {
  std::string criterion = std::string(kGoldCriterion);
  int gold_total = 0;
  int mined_total = 0;
  int matching = 0;   // gold relations hit by at least one mined instance
  int new_inter = 0;  // mined inter-sentential instances hitting no gold relation
  int intra = 0;      // mined intra-sentential instances, outside the gold scope
  int label_comparable = 0;
  int label_agreement = 0;
  std::map<std::string, WitnessBreakdown> per_witness_language;

  nlohmann::ordered_json to_json() const;  // keys matching, new, intra, ...
};

GoldComparison compare_to_gold(const DatasetManifest &ours, const std::vector<GoldRelation> &gold);

}  // namespace idr::dataset

#endif  // IDR_DATASET_GOLD_H_
