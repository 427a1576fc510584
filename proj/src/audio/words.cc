// src/audio/words.cc

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

#include "idr/audio/words.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "idr/base/io.h"
#include "idr/base/text.h"

namespace idr::audio {
namespace {

std::vector<char32_t> code_points(std::string_view s) {
  std::vector<char32_t> out;
  std::size_t pos = 0;
  while (pos < s.size()) out.push_back(next_code_point(s, pos));
  return out;
}

}  // namespace

std::vector<WordTimestamp> parse_words_jsonl(std::string_view content) {
  std::vector<WordTimestamp> out;
  std::size_t line = 0;
  for (const auto &row : parse_jsonl(content)) {
    ++line;
    WordTimestamp w;
    try {
      w.word = row.at("word").get<std::string>();
      w.start = row.at("start").get<double>();
      w.end = row.at("end").get<double>();
    } catch (const nlohmann::json::exception &e) {
      throw ParseError(std::string("word timestamp: ") + e.what(), line);
    }
    if (w.end < w.start) throw ValidationError("word '" + w.word + "' ends before it starts");
    if (!out.empty() && w.start < out.back().start)
      throw ValidationError("word timestamps go backwards at '" + w.word + "'");
    out.push_back(std::move(w));
  }
  return out;
}

std::string words_to_jsonl(const std::vector<WordTimestamp> &words) {
  std::vector<nlohmann::json> rows;
  rows.reserve(words.size());
  for (const auto &w : words) rows.push_back({{"word", w.word}, {"start", w.start}, {"end", w.end}});
  return to_jsonl(rows);
}

std::vector<WordTimestamp> load_words(const std::filesystem::path &path) {
  return parse_words_jsonl(read_file(path));
}

std::vector<std::string> normalize_tokens(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  std::size_t pos = 0;
  while (pos < text.size()) {
    char32_t c = next_code_point(text, pos);
    if (is_space(c)) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else if (!is_punct(c)) {
      append_utf8(cur, to_lower(c));
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

double normalized_char_distance(std::string_view a, std::string_view b) {
  auto x = code_points(a), y = code_points(b);
  if (x.empty() && y.empty()) return 0.0;
  std::vector<std::size_t> prev(y.size() + 1), cur(y.size() + 1);
  for (std::size_t j = 0; j <= y.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= x.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= y.size(); ++j)
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (x[i - 1] == y[j - 1] ? 0 : 1)});
    std::swap(prev, cur);
  }
  return static_cast<double>(prev[y.size()]) / static_cast<double>(std::max(x.size(), y.size()));
}

WordAlignment align_span_to_time(std::string_view span_text, const std::vector<WordTimestamp> &words,
                                 double threshold) {
  if (words.empty()) throw ContractError("no word timestamps to align against");
  const auto span = normalize_tokens(span_text);
  if (span.empty()) throw UnalignableError("span has no words");

  // words that survive normalization, mapped back to their positions
  std::vector<std::string> toks;
  std::vector<std::size_t> where;
  for (std::size_t i = 0; i < words.size(); ++i) {
    std::string joined;
    for (auto &t : normalize_tokens(words[i].word)) joined += t;
    if (joined.empty()) continue;
    toks.push_back(std::move(joined));
    where.push_back(i);
  }
  if (toks.empty()) throw UnalignableError("no alignable words");

  const std::size_t m = span.size();
  std::map<std::pair<std::size_t, std::size_t>, double> sub_cache;
  auto sub = [&](std::size_t p, std::size_t q) {
    auto key = std::make_pair(p, q);
    auto it = sub_cache.find(key);
    if (it != sub_cache.end()) return it->second;
    double d = normalized_char_distance(span[p], toks[q]);
    sub_cache.emplace(key, d);
    return d;
  };

  // normalized distance >= |m - k| / max(m, k), which bounds useful k
  const std::size_t k_max = std::min(
      toks.size(), static_cast<std::size_t>(std::floor(static_cast<double>(m) / (1.0 - threshold))) + 1);

  double best = std::numeric_limits<double>::infinity();
  std::size_t best_first = 0, best_len = 0;
  std::vector<double> col(m + 1), next(m + 1);
  for (std::size_t s = 0; s < toks.size(); ++s) {
    // col[p] = distance between span[0..p) and the window so far
    for (std::size_t p = 0; p <= m; ++p) col[p] = static_cast<double>(p);
    for (std::size_t k = 1; k <= k_max && s + k <= toks.size(); ++k) {
      const std::size_t q = s + k - 1;
      next[0] = static_cast<double>(k);
      for (std::size_t p = 1; p <= m; ++p)
        next[p] = std::min({col[p] + 1.0, next[p - 1] + 1.0, col[p - 1] + sub(p - 1, q)});
      std::swap(col, next);
      double d = col[m] / static_cast<double>(std::max(m, k));
      // strict improvement keeps the shorter, then earlier, window on ties
      constexpr double kEps = 1e-12;
      if (d < best - kEps || (std::abs(d - best) <= kEps && k < best_len)) {
        best = d;
        best_first = s;
        best_len = k;
      }
    }
  }
  if (best > threshold + 1e-12)
    throw UnalignableError("best word run has normalized distance " + std::to_string(best));
  WordAlignment a;
  a.first = where[best_first];
  a.last = where[best_first + best_len - 1];
  a.span = {words[a.first].start, words[a.last].end};
  a.distance = best;
  return a;
}

}  // namespace idr::audio
