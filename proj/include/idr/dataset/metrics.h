// include/idr/dataset/metrics.h

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

#ifndef IDR_DATASET_METRICS_H_
#define IDR_DATASET_METRICS_H_

#include <array>
#include <vector>

#include <nlohmann/json.hpp>

#include "idr/corpus/types.h"

namespace idr::dataset {

inline constexpr int kClasses = corpus::kNumLabels;
using Confusion = std::array<std::array<long, kClasses>, kClasses>;  // [gold][predicted]

struct Metrics {
  double accuracy = 0;
  double macro_precision = 0, macro_recall = 0, macro_f1 = 0;
  std::array<double, kClasses> precision{}, recall{}, f1{};
  Confusion confusion{};

  nlohmann::ordered_json to_json() const;
};

// Any 0/0 ratio is taken as 0. Macro scores are unweighted means over all
// four classes, present or not.
Metrics metrics_from_confusion(const Confusion &c);

// Throws ContractError on length mismatch and ValidationError on a label
// outside 0..3.
Metrics evaluate(const std::vector<int> &predicted, const std::vector<int> &gold);

}  // namespace idr::dataset

#endif  // IDR_DATASET_METRICS_H_
