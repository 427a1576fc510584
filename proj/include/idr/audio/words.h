// include/idr/audio/words.h

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

#ifndef IDR_AUDIO_WORDS_H_
#define IDR_AUDIO_WORDS_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "idr/audio/clip.h"
#include "idr/base/error.h"

namespace idr::audio {

struct WordTimestamp {
  std::string word;
  double start = 0.0;
  double end = 0.0;
  bool operator==(const WordTimestamp &) const = default;
};

// One {"word","start","end"} object per line. Throws ValidationError when
// end < start or starts go backwards.
std::vector<WordTimestamp> parse_words_jsonl(std::string_view content);
std::string words_to_jsonl(const std::vector<WordTimestamp> &words);
std::vector<WordTimestamp> load_words(const std::filesystem::path &path);

class UnalignableError : public Error {
 public:
  using Error::Error;
};

// Lowercased, punctuation removed, split on whitespace.
std::vector<std::string> normalize_tokens(std::string_view text);

// Levenshtein distance over code points divided by the longer length.
double normalized_char_distance(std::string_view a, std::string_view b);

struct WordAlignment {
  TimeSpan span;
  std::size_t first = 0;  // indices into the word list, inclusive
  std::size_t last = 0;
  double distance = 0.0;  // normalized token edit distance
};

inline constexpr double kAlignThreshold = 0.3;

// Best contiguous run of words for the span text. Token edit distance uses
// substitution cost = normalized character distance and unit insert/delete,
// divided by the longer of the two token counts. Ties go to the shorter
// run, then the earlier one. Throws UnalignableError above `threshold`.
WordAlignment align_span_to_time(std::string_view span_text, const std::vector<WordTimestamp> &words,
                                 double threshold = kAlignThreshold);

}  // namespace idr::audio

#endif  // IDR_AUDIO_WORDS_H_
