// src/mining/detect.cc

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

#include "idr/mining/detect.h"

#include <set>

namespace idr::mining {
namespace {

bool is_clause_mark(std::string_view p) { return p == "," || p == ";" || p == "\xD8\x8C"; }

// Opening quotes and dashes that may precede the first word of a clause.
bool is_lead_punct(std::string_view p) {
  return p == "\"" || p == "\xC2\xAB" || p == "\xE2\x80\x9C" || p == "\xE2\x80\x9E" ||
         p == "-" || p == "\xE2\x80\x94" || p == "\xE2\x80\x93" || p == "(" ||
         p == "\xC2\xBF" || p == "\xC2\xA1";
}

}  // namespace

bool is_sentence_final(std::string_view p) {
  return p == "." || p == "!" || p == "?" || p == "\xE2\x80\xA6" || p == "\xD8\x9F";
}

bool is_coordinating_conjunction(std::string_view w) {
  static const std::set<std::string, std::less<>> kConj = {
      // en
      "and", "but", "or", "nor", "yet",
      // fr
      "et", "mais", "ou", "ni",
      // es
      "y", "e", "pero", "o", "u", "mas",
      // de
      "und", "aber", "oder", "sondern",
      // ar
      "\xD9\x88"};
  return kConj.count(w) > 0;
}

bool is_clause_initial(const std::vector<Token> &tokens, std::size_t i) {
  if (i >= tokens.size() || tokens[i].kind != TokenKind::kWord) return false;
  std::size_t k = i;
  while (k > 0 && tokens[k - 1].kind == TokenKind::kPunct && is_lead_punct(tokens[k - 1].text)) --k;
  if (k == 0) return true;
  const Token &prev = tokens[k - 1];
  if (prev.kind == TokenKind::kPunct)
    return is_sentence_final(prev.text) || is_clause_mark(prev.text);
  // ", and so ..." : conjunction right after a clause mark
  if (is_coordinating_conjunction(prev.text) && k >= 2) {
    const Token &before = tokens[k - 2];
    return before.kind == TokenKind::kPunct && is_clause_mark(before.text);
  }
  return false;
}

std::pair<int, int> clause_position(const std::vector<Token> &tokens, std::size_t i) {
  int sentence = 0, clause = 0;
  bool seen_word = false;
  for (std::size_t k = 0; k < i && k < tokens.size(); ++k) {
    const Token &t = tokens[k];
    if (t.kind == TokenKind::kWord) {
      seen_word = true;
      continue;
    }
    if (!seen_word) continue;
    if (is_sentence_final(t.text)) {
      // runs like "..." or "?!" end one sentence
      if (k + 1 < tokens.size() && tokens[k + 1].kind == TokenKind::kPunct &&
          is_sentence_final(tokens[k + 1].text))
        continue;
      ++sentence;
      clause = 0;
      seen_word = false;
    } else if (is_clause_mark(t.text)) {
      ++clause;
    }
  }
  return {sentence, clause};
}

Detection screen_pair(const CandidatePair &pair, const corpus::Lexicon &source_lexicon,
                      const corpus::Lexicon &target_lexicon) {
  Detection d;
  const std::string &tgt_text = pair.target_segment.text;
  auto tgt_tokens = tokenize(tgt_text);
  auto tgt_matches = target_lexicon.find_all(tgt_tokens);
  if (tgt_matches.empty()) {
    d.reason = DropReason::kNoConnective;
    d.detail = "no " + target_lexicon.language() + " connective in target";
    return d;
  }

  auto src_tokens = tokenize(pair.source_segment.text);
  auto src_matches = source_lexicon.find_all(src_tokens);
  if (!src_matches.empty()) {
    d.reason = DropReason::kSrcExplicit;
    d.detail = "source already has '" + src_matches.front().surface + "'";
    return d;
  }

  if (tgt_matches.size() > 1) {
    d.reason = DropReason::kTgtAlternative;
    d.detail = "target has " + std::to_string(tgt_matches.size()) + " connectives: '" +
               tgt_matches[0].surface + "', '" + tgt_matches[1].surface + "'";
    return d;
  }

  const auto &m = tgt_matches.front();
  if (!is_clause_initial(tgt_tokens, m.first)) {
    d.reason = DropReason::kNotClauseInitial;
    d.detail = "'" + m.surface + "' is not clause-initial";
    return d;
  }

  Explicitation e;
  e.connective = m.surface;
  e.sense = m.sense;
  e.token_first = m.first;
  e.token_last = m.last;
  e.byte_begin = tgt_tokens[m.first].begin;
  e.byte_end = tgt_tokens[m.last - 1].end;
  std::tie(e.sentence_ordinal, e.clause_ordinal) = clause_position(tgt_tokens, m.first);
  d.hit = std::move(e);
  return d;
}

std::optional<Explicitation> detect_explicitation(const CandidatePair &pair,
                                                  const corpus::Lexicon &source_lexicon,
                                                  const corpus::Lexicon &target_lexicon) {
  return screen_pair(pair, source_lexicon, target_lexicon).hit;
}

}  // namespace idr::mining
