// include/idr/dataset/split.h

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

#ifndef IDR_DATASET_SPLIT_H_
#define IDR_DATASET_SPLIT_H_

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "idr/corpus/types.h"
#include "idr/dataset/manifest.h"

namespace idr::dataset {

struct SplitSpec {
  std::array<double, 3> ratios{0.6, 0.2, 0.2};  // train, validation, test
  std::uint64_t seed = 0;

  // Throws ValidationError unless every ratio is >= 0 and they sum to 1.
  void validate() const;
};

// en 0.6/0.2/0.2, fr 0.55/0.15/0.3, es 0.25/0.25/0.5; anything else gets
// the English ratios.
SplitSpec default_split_spec(std::string_view language);

struct TalkLoad {
  std::string talk_id;
  std::array<int, corpus::kNumLabels> labels{};
  int total() const;
};

std::vector<TalkLoad> talk_loads(const std::vector<ManifestEntry> &entries);

// sum_j |n_j - r_j N| + sum_j sum_c |n_jc - r_j N_c| for an assignment of
// talks to splits 0..2.
double split_deficit(const std::vector<TalkLoad> &talks, const std::vector<int> &assignment,
                     const std::array<double, 3> &ratios);

// Greedy placement by descending talk size (seeded tie-break), each talk
// going where the deficit grows least, followed by single moves and pair
// swaps while they lower the deficit. Every split with a positive ratio
// receives at least one talk. Throws ValidationError with fewer than three
// talks or fewer talks than positive-ratio splits.
std::vector<int> assign_talks(const std::vector<TalkLoad> &talks, const SplitSpec &spec);

// Splits each language separately; languages missing from the map use
// default_split_spec.
void split_manifest(DatasetManifest &m, const std::map<std::string, SplitSpec> &per_language = {});

}  // namespace idr::dataset

#endif  // IDR_DATASET_SPLIT_H_
