// include/idr/corpus/subtitles.h

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

#ifndef IDR_CORPUS_SUBTITLES_H_
#define IDR_CORPUS_SUBTITLES_H_

#include <string>
#include <string_view>
#include <vector>

#include "idr/corpus/types.h"

namespace idr::corpus {

enum class SubtitleFormat { kSrt, kSegmentsJson };

// Parses an SRT file or a segments-JSON array ({index, start_ms, end_ms,
// text}). SRT block numbers are 1-based; the returned index is number - 1.
// Text lines of a block are joined with single spaces.
//
// Throws ParseError (with line number) for malformed input and
// ValidationError when end <= start, indices do not strictly increase, or a
// text is blank.
std::vector<SubtitleSegment> parse_subtitles(std::string_view content,
                                             SubtitleFormat format,
                                             const std::string &talk_id = "");

std::string write_srt(const std::vector<SubtitleSegment> &segments);
std::string write_segments_json(const std::vector<SubtitleSegment> &segments);

// "HH:MM:SS,mmm"; '.' is accepted in place of ','.
std::int64_t parse_srt_time(std::string_view s, std::size_t line);
std::string format_srt_time(std::int64_t ms);

}  // namespace idr::corpus

#endif  // IDR_CORPUS_SUBTITLES_H_
