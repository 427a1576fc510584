// include/idr/corpus/types.h

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

#ifndef IDR_CORPUS_TYPES_H_
#define IDR_CORPUS_TYPES_H_

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace idr::corpus {

enum class RelationLabel : int {
  kCauseEffect = 0,
  kContrast = 1,
  kTemporal = 2,
  kElaboration = 3,
};

inline constexpr int kNumLabels = 4;
inline constexpr std::array<RelationLabel, kNumLabels> kAllLabels = {
    RelationLabel::kCauseEffect, RelationLabel::kContrast,
    RelationLabel::kTemporal, RelationLabel::kElaboration};

// "cause-effect", "contrast", "temporal", "elaboration".
std::string_view label_name(RelationLabel label);
// Inverse of label_name; throws LookupError on anything else.
RelationLabel parse_label(std::string_view name);
RelationLabel label_from_index(int index);
inline int label_index(RelationLabel label) { return static_cast<int>(label); }

struct Talk {
  std::string talk_id;
  std::string source_language;
  std::set<std::string> translations;
  std::string audio_path;
};

// Talks keyed by id. add() enforces id uniqueness and that the source
// language is not listed among the translations.
class TalkRegistry {
 public:
  void add(Talk talk);
  const Talk &at(const std::string &talk_id) const;
  bool contains(const std::string &talk_id) const;
  const std::map<std::string, Talk> &talks() const { return talks_; }
  std::size_t size() const { return talks_.size(); }

  // JSON array of {talk_id, source_language, translations, audio_path}.
  static TalkRegistry from_json(const nlohmann::json &j);
  nlohmann::json to_json() const;

 private:
  std::map<std::string, Talk> talks_;
};

// One timed subtitle unit. Times are integer milliseconds.
struct SubtitleSegment {
  std::string talk_id;
  std::int64_t index = 0;
  std::int64_t start_ms = 0;
  std::int64_t end_ms = 0;
  std::string text;

  double start() const { return static_cast<double>(start_ms) / 1000.0; }
  double end() const { return static_cast<double>(end_ms) / 1000.0; }
  std::int64_t duration_ms() const { return end_ms - start_ms; }

  bool operator==(const SubtitleSegment &) const = default;
};

nlohmann::json to_json(const SubtitleSegment &s);
SubtitleSegment segment_from_json(const nlohmann::json &j);

}  // namespace idr::corpus

#endif  // IDR_CORPUS_TYPES_H_
