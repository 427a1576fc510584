// src/segment/spans.cc

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

#include "idr/segment/spans.h"

#include <vector>

#include "idr/base/error.h"
#include "idr/base/text.h"
#include "idr/mining/detect.h"

namespace idr::segment {
namespace {

std::size_t prev_cp(std::string_view s, std::size_t pos) {
  std::size_t p = pos - 1;
  while (p > 0 && (static_cast<unsigned char>(s[p]) & 0xC0) == 0x80) --p;
  return p;
}

bool strippable(char32_t c) { return is_space(c) || is_punct(c); }

ByteRange trim_range(std::string_view text, ByteRange r) {
  while (r.begin < r.end) {
    std::size_t q = r.begin;
    if (!strippable(next_code_point(text, q))) break;
    r.begin = q;
  }
  while (r.end > r.begin) {
    std::size_t p = prev_cp(text, r.end);
    std::size_t q = p;
    if (!strippable(next_code_point(text, q))) break;
    r.end = p;
  }
  return r;
}

bool is_dash(std::string_view t) {
  return t == "\xE2\x80\x94" || t == "\xE2\x80\x93" || t == "-";
}

// Start of the last clause within [begin, end) of text.
std::size_t last_clause_start(std::string_view text, std::size_t begin, std::size_t end) {
  auto tokens = tokenize(text.substr(begin, end - begin));
  std::size_t start = begin;
  for (const auto &t : tokens) {
    std::size_t abs_end = begin + t.end;
    if (t.kind == TokenKind::kPunct) {
      bool spaced_hyphen = t.text == "-" && t.begin > 0 && text[begin + t.begin - 1] == ' ';
      if (t.text == "," || t.text == ";" || (is_dash(t.text) && (t.text != "-" || spaced_hyphen)))
        start = abs_end;
    } else if (mining::is_coordinating_conjunction(t.text)) {
      start = abs_end;
    }
  }
  return start;
}

// Whitespace-insensitive view: collapsed text plus byte map back.
struct Collapsed {
  std::string text;
  std::vector<std::size_t> origin;  // origin[i] = byte in source of text[i]
};

Collapsed collapse(std::string_view s) {
  Collapsed c;
  bool in_space = false;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t at = pos;
    char32_t cp = next_code_point(s, pos);
    if (is_space(cp)) {
      if (!in_space && !c.text.empty()) {
        c.text += ' ';
        c.origin.push_back(at);
      }
      in_space = true;
      continue;
    }
    in_space = false;
    for (std::size_t k = at; k < pos; ++k) {
      c.text += s[k];
      c.origin.push_back(k);
    }
  }
  if (!c.text.empty() && c.text.back() == ' ') {
    c.text.pop_back();
    c.origin.pop_back();
  }
  return c;
}

}  // namespace

std::string_view span_source_name(SpanSource s) {
  return s == SpanSource::kExternal ? "external" : "fallback";
}

SpanSource parse_span_source(std::string_view s) {
  if (s == "external") return SpanSource::kExternal;
  if (s == "fallback") return SpanSource::kFallback;
  throw ValidationError("unknown span source '" + std::string(s) + "'");
}

SpanCheck validate_spans(const ArgSpans &spans, std::string_view text) {
  if (spans.arg1.empty() || spans.arg2.empty()) return {false, "empty"};
  if (spans.arg1.end > text.size() || spans.arg2.end > text.size()) return {false, "bounds"};
  if (spans.arg1.begin < spans.arg2.end && spans.arg2.begin < spans.arg1.end)
    return {false, "overlap"};
  if (spans.arg1.end > spans.arg2.begin) return {false, "order"};
  return {};
}

std::optional<ByteRange> locate_span(std::string_view text, std::string_view needle,
                                     std::size_t from) {
  auto trimmed = trim(needle);
  if (trimmed.empty()) return std::nullopt;
  if (from > text.size()) from = text.size();
  auto p = text.find(trimmed, from);
  if (p == std::string_view::npos) p = text.find(trimmed);
  if (p != std::string_view::npos) return ByteRange{p, p + trimmed.size()};

  Collapsed hay = collapse(text);
  Collapsed pin = collapse(trimmed);
  if (pin.text.empty()) return std::nullopt;
  std::size_t cfrom = 0;
  while (cfrom < hay.origin.size() && hay.origin[cfrom] < from) ++cfrom;
  auto q = hay.text.find(pin.text, cfrom);
  if (q == std::string::npos) q = hay.text.find(pin.text);
  if (q == std::string::npos) return std::nullopt;
  std::size_t last = q + pin.text.size() - 1;
  return ByteRange{hay.origin[q], hay.origin[last] + 1};
}

std::optional<ArgSpans> fallback_spans(const ContextWindow &ctx) {
  std::string_view text = ctx.text;
  const ByteRange cur = ctx.current_range;
  const std::size_t rel = ctx.relation_offset;
  if (rel < cur.begin || rel > cur.end || cur.end > text.size()) return std::nullopt;

  ArgSpans spans;
  spans.source = SpanSource::kFallback;
  spans.arg2 = trim_range(text, {rel, cur.end});

  ByteRange before = trim_range(text, {cur.begin, rel});
  if (ctx.inter_sentential || before.empty()) {
    if (cur.begin == 0) return std::nullopt;
    spans.arg1 = trim_range(text, {0, cur.begin});
  } else {
    std::size_t start = last_clause_start(text, before.begin, before.end);
    spans.arg1 = trim_range(text, {start, before.end});
    if (spans.arg1.empty()) spans.arg1 = before;
  }
  if (!validate_spans(spans, text).ok) return std::nullopt;
  return spans;
}

}  // namespace idr::segment
