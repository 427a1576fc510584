// include/idr/dataset/manifest.h

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

#ifndef IDR_DATASET_MANIFEST_H_
#define IDR_DATASET_MANIFEST_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "idr/corpus/types.h"

namespace idr::dataset {

enum class Split { kTrain = 0, kValidation = 1, kTest = 2, kUnassigned = 3 };
inline constexpr std::array<Split, 4> kAllSplits = {Split::kTrain, Split::kValidation, Split::kTest,
                                                    Split::kUnassigned};

std::string_view split_name(Split s);  // "train", "validation", "test", "unassigned"
Split parse_split(std::string_view name);

struct ManifestEntry {
  std::string instance_id;
  std::string talk_id;
  std::string language;
  corpus::RelationLabel label = corpus::RelationLabel::kCauseEffect;
  std::string arg1_text, arg2_text;
  std::string arg1_clip, arg2_clip;  // paths relative to the manifest directory
  Split split = Split::kUnassigned;
  // Talk-level index of the sentence holding Arg2, and whether Arg1 sits in
  // an earlier sentence. Used by the gold comparison.
  std::int64_t sentence_index = -1;
  bool inter_sentential = false;
  std::string witness_language;

  bool operator==(const ManifestEntry &) const = default;
};

nlohmann::ordered_json to_json(const ManifestEntry &e);
ManifestEntry entry_from_json(const nlohmann::json &j);

inline constexpr std::string_view kManifestVersion = "idr-manifest-1";

struct DatasetManifest {
  std::vector<ManifestEntry> instances;
  std::string version = std::string(kManifestVersion);
  std::string provenance;  // hash of the inputs the manifest was built from

  // Sorts by instance_id and throws ValidationError on duplicate ids.
  void normalize();
  // sha256 of the JSONL body.
  std::string content_hash() const;
  std::string to_jsonl() const;
  static DatasetManifest from_jsonl(std::string_view body);

  // Writes <path> (JSONL, sorted) and <path>.meta.json with version,
  // provenance, count and content hash.
  void save(const std::filesystem::path &path) const;
  static DatasetManifest load(const std::filesystem::path &path);
};

// Throws ValidationError naming the first clip that does not exist under
// root.
void check_clips(const DatasetManifest &m, const std::filesystem::path &root);

}  // namespace idr::dataset

#endif  // IDR_DATASET_MANIFEST_H_
