// include/idr/dataset/stats.h

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

#ifndef IDR_DATASET_STATS_H_
#define IDR_DATASET_STATS_H_

#include <array>
#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "idr/corpus/types.h"
#include "idr/dataset/manifest.h"

namespace idr::dataset {

struct CellCounts {
  int relations = 0;
  int talks = 0;
  std::array<int, corpus::kNumLabels> labels{};
};

struct LanguageStats {
  CellCounts total;
  std::array<CellCounts, 4> splits;  // indexed by Split
};

struct StatsReport {
  std::map<std::string, LanguageStats> languages;

  // Fixed key order: languages sorted, labels in enum order, splits in
  // train/validation/test/unassigned order. dump(2) of this is the
  // canonical JSON form.
  nlohmann::ordered_json to_json() const;
  std::string to_json_text() const;  // dump(2) plus trailing newline
  // Aligned plain-text tables, one block per language.
  std::string to_text() const;
};

StatsReport stats_report(const DatasetManifest &m);

}  // namespace idr::dataset

#endif  // IDR_DATASET_STATS_H_
