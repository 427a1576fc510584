// src/segment/context.cc

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

#include "idr/segment/context.h"

#include <algorithm>
#include <set>

#include "idr/base/error.h"
#include "idr/base/text.h"

namespace idr::segment {
namespace {

bool is_terminal(char32_t c) { return c == '.' || c == '!' || c == '?' || c == 0x2026; }

bool opens_sentence(char32_t c) {
  return is_upper(c) || is_caseless_letter(c) || (c >= '0' && c <= '9') || c == '"' ||
         c == 0xAB || c == 0x201C || c == 0xBF || c == 0xA1 || c == '(' || c == '\'';
}

// Word immediately before byte offset `dot`, lowercased.
std::string word_before(std::string_view text, std::size_t dot) {
  std::size_t b = dot;
  while (b > 0) {
    std::size_t p = b - 1;
    while (p > 0 && (static_cast<unsigned char>(text[p]) & 0xC0) == 0x80) --p;
    std::size_t q = p;
    char32_t c = next_code_point(text, q);
    if (!is_word_char(c) && c != '.') break;
    b = p;
  }
  return to_lower(text.substr(b, dot - b));
}

bool is_abbreviation(std::string_view word) {
  static const std::set<std::string, std::less<>> kAbbrev = {
      "dr", "mr", "mrs", "ms", "prof", "st", "jr", "sr", "sra", "srta", "dra", "vs",
      "mt", "mme", "mlle", "m", "etc", "e.g", "i.e", "no", "fig", "approx", "ca",
      "u.s", "p.ej", "cf", "ud", "uds", "av", "bzw", "z.b", "usw"};
  if (kAbbrev.count(word)) return true;
  // single letter initials: "J. Smith"
  std::size_t pos = 0, n = 0;
  while (pos < word.size()) {
    next_code_point(word, pos);
    ++n;
  }
  return n == 1;
}

void append_part(std::string &text, std::string_view part) {
  if (part.empty()) return;
  if (!text.empty()) text += ' ';
  text += part;
}

}  // namespace

std::vector<ByteRange> split_sentences(std::string_view text) {
  std::vector<ByteRange> out;
  std::size_t pos = 0;
  // skip leading space
  auto skip_space = [&](std::size_t p) {
    while (p < text.size()) {
      std::size_t q = p;
      if (!is_space(next_code_point(text, q))) break;
      p = q;
    }
    return p;
  };
  std::size_t start = skip_space(0);
  pos = start;
  while (pos < text.size()) {
    std::size_t cp_begin = pos;
    char32_t c = next_code_point(text, pos);
    if (!is_terminal(c)) continue;
    // absorb runs like "?!" or "..." and closing quotes/brackets
    std::size_t end = pos;
    while (end < text.size()) {
      std::size_t q = end;
      char32_t d = next_code_point(text, q);
      if (is_terminal(d) || d == '"' || d == 0xBB || d == 0x201D || d == ')' || d == '\'') {
        end = q;
      } else {
        break;
      }
    }
    std::size_t after = skip_space(end);
    bool boundary = false;
    if (after >= text.size()) {
      boundary = true;
    } else if (after > end) {
      std::size_t q = after;
      char32_t nxt = next_code_point(text, q);
      boundary = opens_sentence(nxt);
      if (boundary && end == pos && c == '.' && is_abbreviation(word_before(text, cp_begin)))
        boundary = false;
    }
    if (boundary) {
      out.push_back({start, end});
      start = after;
    }
    pos = end;
  }
  // trailing text without terminal punctuation
  std::size_t tail_end = text.size();
  while (tail_end > start) {
    std::size_t p = tail_end - 1;
    while (p > start && (static_cast<unsigned char>(text[p]) & 0xC0) == 0x80) --p;
    std::size_t q = p;
    if (!is_space(next_code_point(text, q))) break;
    tail_end = p;
  }
  if (tail_end > start) out.push_back({start, tail_end});
  return out;
}

std::string ContextWindow::unmarked() const {
  std::string s = marked_text;
  for (auto marker : {kMarkerOpen, kMarkerClose}) {
    auto p = s.find(marker);
    if (p != std::string::npos) s.erase(p, marker.size());
  }
  return s;
}

ContextWindow build_context(const std::vector<corpus::SubtitleSegment> &segments,
                            std::size_t hit_position, RelationAnchor anchor) {
  if (hit_position >= segments.size())
    throw ContractError("hit position " + std::to_string(hit_position) + " outside talk of " +
                        std::to_string(segments.size()) + " segments");

  std::string talk;
  std::vector<ByteRange> seg_ranges;
  for (const auto &s : segments) {
    if (!talk.empty()) talk += ' ';
    seg_ranges.push_back({talk.size(), talk.size() + s.text.size()});
    talk += s.text;
  }
  auto sentences = split_sentences(talk);
  if (sentences.empty()) throw ValidationError("talk " + segments[hit_position].talk_id + " has no text");
  const ByteRange seg = seg_ranges[hit_position];

  // sentence starts inside the hit segment
  std::vector<std::size_t> starts = {seg.begin};
  for (const auto &r : sentences)
    if (r.begin > seg.begin && r.begin < seg.end) starts.push_back(r.begin);
  std::size_t k = std::min<std::size_t>(std::max(anchor.sentence_ordinal, 0), starts.size() - 1);
  std::size_t rel = starts[k];

  auto sentence_of = [&](std::size_t off) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < sentences.size(); ++i)
      if (sentences[i].begin <= off) idx = i;
    return idx;
  };
  std::size_t cur = sentence_of(rel);

  if (anchor.clause_ordinal > 0) {
    const std::size_t limit = std::min(sentences[cur].end, seg.end);
    std::vector<std::size_t> clause_starts;
    for (std::size_t p = rel; p < limit; ++p) {
      if (talk[p] == ',' || talk[p] == ';') {
        std::size_t q = p + 1;
        while (q < limit && talk[q] == ' ') ++q;
        if (q < limit) clause_starts.push_back(q);
      }
    }
    if (!clause_starts.empty())
      rel = clause_starts[std::min<std::size_t>(anchor.clause_ordinal, clause_starts.size()) - 1];
  }

  ContextWindow ctx;
  ctx.talk_id = segments[hit_position].talk_id;
  ctx.sentence_index = static_cast<std::int64_t>(cur);
  auto slice = [&](std::size_t i) {
    return std::string(talk.substr(sentences[i].begin, sentences[i].size()));
  };
  ctx.current = slice(cur);
  if (cur > 0) ctx.prev = slice(cur - 1);
  if (cur + 1 < sentences.size()) ctx.next = slice(cur + 1);

  append_part(ctx.text, ctx.prev);
  std::size_t cur_begin = ctx.text.empty() ? 0 : ctx.text.size() + 1;
  append_part(ctx.text, ctx.current);
  ctx.current_range = {cur_begin, cur_begin + ctx.current.size()};
  append_part(ctx.text, ctx.next);
  ctx.relation_offset = cur_begin + (rel - sentences[cur].begin);
  ctx.inter_sentential = rel == sentences[cur].begin;

  std::string marked_current = std::string(kMarkerOpen) + ctx.current + std::string(kMarkerClose);
  append_part(ctx.marked_text, ctx.prev);
  append_part(ctx.marked_text, marked_current);
  append_part(ctx.marked_text, ctx.next);

  // segments overlapping prev..next
  const std::size_t lo = sentences[cur > 0 ? cur - 1 : cur].begin;
  const std::size_t hi = sentences[cur + 1 < sentences.size() ? cur + 1 : cur].end;
  for (std::size_t i = 0; i < segments.size(); ++i)
    if (seg_ranges[i].end > lo && seg_ranges[i].begin < hi) ctx.segment_indices.push_back(segments[i].index);
  return ctx;
}

}  // namespace idr::segment
