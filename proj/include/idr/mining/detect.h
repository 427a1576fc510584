// include/idr/mining/detect.h

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

#ifndef IDR_MINING_DETECT_H_
#define IDR_MINING_DETECT_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "idr/base/drop_reason.h"
#include "idr/base/text.h"
#include "idr/corpus/lexicon.h"
#include "idr/mining/types.h"

namespace idr::mining {

// A target-side connective inserted where the source has none.
struct Explicitation {
  std::string connective;
  corpus::RelationLabel sense;
  std::size_t token_first = 0;  // into tokenize(target text)
  std::size_t token_last = 0;
  std::size_t byte_begin = 0;  // into the target text
  std::size_t byte_end = 0;
  int sentence_ordinal = 0;
  int clause_ordinal = 0;
};

// Token i starts a clause: it is the first word, or follows sentence-final
// punctuation, a comma or semicolon, or a comma/semicolon plus a
// coordinating conjunction.
bool is_clause_initial(const std::vector<Token> &tokens, std::size_t i);
bool is_sentence_final(std::string_view punct);
bool is_coordinating_conjunction(std::string_view word);

// (sentence ordinal, clause ordinal) of token i within its text.
std::pair<int, int> clause_position(const std::vector<Token> &tokens, std::size_t i);

struct Detection {
  std::optional<Explicitation> hit;
  std::optional<DropReason> reason;  // set iff !hit
  std::string detail;
};

// Applies the three screening conditions and reports the first failing one:
// a clause-initial target connective exists, the source segment carries no
// source connective anywhere, and the target carries no other connective.
Detection screen_pair(const CandidatePair &pair, const corpus::Lexicon &source_lexicon,
                      const corpus::Lexicon &target_lexicon);

std::optional<Explicitation> detect_explicitation(const CandidatePair &pair,
                                                  const corpus::Lexicon &source_lexicon,
                                                  const corpus::Lexicon &target_lexicon);

}  // namespace idr::mining

#endif  // IDR_MINING_DETECT_H_
