// include/idr/corpus/lexicon.h

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

#ifndef IDR_CORPUS_LEXICON_H_
#define IDR_CORPUS_LEXICON_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "idr/base/text.h"
#include "idr/corpus/types.h"

namespace idr::corpus {

struct ConnectiveEntry {
  std::string surface;  // lowercase, space-normalized
  std::string language;
  RelationLabel sense;
  bool ambiguous = false;

  bool operator==(const ConnectiveEntry &) const = default;
};

// Sense strings accepted in lexicon files. Temporal sub-senses fold into
// kTemporal. Throws LookupError otherwise.
RelationLabel parse_sense(std::string_view sense);

// Reads a 3-column TSV (surface, sense, ambiguous flag). Blank lines and
// lines starting with '#' are skipped. Ambiguous rows are dropped before
// their sense is interpreted. Unknown senses or flags raise ParseError
// naming the row.
std::vector<ConnectiveEntry> load_lexicon(std::string_view tsv,
                                          std::string_view language);

std::string write_lexicon(const std::vector<ConnectiveEntry> &entries);

// A connective occurrence over a token stream. Token indices are
// half-open [first, last).
struct ConnectiveMatch {
  std::size_t first;
  std::size_t last;
  std::string surface;
  RelationLabel sense;
};

// Unambiguous connectives of one language, indexed for matching.
// Matching is case-insensitive, respects token boundaries and prefers the
// longest surface at each position; the result does not depend on entry
// order.
class Lexicon {
 public:
  Lexicon() = default;
  // Throws ValidationError if one surface carries two senses or an entry
  // belongs to another language.
  Lexicon(std::string language, const std::vector<ConnectiveEntry> &entries);

  const std::string &language() const { return language_; }
  std::size_t size() const { return senses_.size(); }
  bool empty() const { return senses_.empty(); }
  std::optional<RelationLabel> sense_of(std::string_view surface) const;
  std::vector<ConnectiveEntry> entries() const;

  // Longest surface starting exactly at tokens[i].
  std::optional<ConnectiveMatch> match_at(const std::vector<Token> &tokens,
                                          std::size_t i) const;
  // Left-to-right, non-overlapping, longest-first.
  std::vector<ConnectiveMatch> find_all(const std::vector<Token> &tokens) const;

 private:
  struct Pattern {
    std::vector<std::string> tokens;
    std::string surface;
  };
  std::string language_;
  std::map<std::string, RelationLabel, std::less<>> senses_;
  // first token -> patterns, longest first then lexicographic
  std::map<std::string, std::vector<Pattern>, std::less<>> by_first_;
};

// Key used to compare a token against lexicon surfaces (apostrophe variants
// unified).
std::string match_key(const Token &t);

}  // namespace idr::corpus

#endif  // IDR_CORPUS_LEXICON_H_
