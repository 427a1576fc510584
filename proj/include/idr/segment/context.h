// include/idr/segment/context.h

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

#ifndef IDR_SEGMENT_CONTEXT_H_
#define IDR_SEGMENT_CONTEXT_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "idr/corpus/types.h"

namespace idr::segment {

inline constexpr std::string_view kMarkerOpen = "[[REL]]";
inline constexpr std::string_view kMarkerClose = "[[/REL]]";

struct ByteRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
  bool empty() const { return end <= begin; }
  bool operator==(const ByteRange &) const = default;
};

// Splits on . ! ? … when followed by whitespace and an uppercase or
// caseless letter (or an opening quote/¿/¡), or by the end of the text.
// Common abbreviations ("Dr.", "Mr.", "Sra.", ...) and single initials do
// not end a sentence. Ranges exclude surrounding whitespace.
std::vector<ByteRange> split_sentences(std::string_view text);

// Where the implicit relation sits inside its source segment, mirrored
// from the witness: sentence ordinal and clause ordinal.
struct RelationAnchor {
  int sentence_ordinal = 0;
  int clause_ordinal = 0;
};

struct ContextWindow {
  std::string talk_id;
  std::string prev;
  std::string current;
  std::string next;
  // prev, current and next joined by single spaces (empty parts skipped)
  std::string text;
  std::string marked_text;
  ByteRange current_range;        // into text
  std::size_t relation_offset = 0;  // into text, inside current_range
  bool inter_sentential = true;   // relation at the start of current
  std::int64_t sentence_index = 0;  // talk-level index of current
  std::vector<std::int64_t> segment_indices;  // subtitle segments covered

  // marked_text without its markers
  std::string unmarked() const;
};

// Builds the three-sentence window around the relation in
// segments[hit_position]. The talk text is the segments joined by spaces.
ContextWindow build_context(const std::vector<corpus::SubtitleSegment> &segments,
                            std::size_t hit_position, RelationAnchor anchor = {});

}  // namespace idr::segment

#endif  // IDR_SEGMENT_CONTEXT_H_
