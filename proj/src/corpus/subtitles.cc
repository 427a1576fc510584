// src/corpus/subtitles.cc

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

#include "idr/corpus/subtitles.h"

#include <algorithm>
#include <cstdio>

#include "idr/base/error.h"
#include "idr/base/text.h"

namespace idr::corpus {
namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(),
                                   [](char c) { return c >= '0' && c <= '9'; });
}

void validate(std::vector<SubtitleSegment> &segs) {
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const auto &s = segs[i];
    if (s.index < 0)
      throw ValidationError("segment " + std::to_string(s.index) + ": negative index");
    if (s.start_ms < 0)
      throw ValidationError("segment " + std::to_string(s.index) + ": negative start");
    if (s.end_ms <= s.start_ms)
      throw ValidationError("segment " + std::to_string(s.index) +
                            ": end " + format_srt_time(s.end_ms) +
                            " is not after start " + format_srt_time(s.start_ms));
    if (s.text.empty())
      throw ValidationError("segment " + std::to_string(s.index) + ": empty text");
    if (i > 0 && s.index <= segs[i - 1].index)
      throw ValidationError("segment indices not strictly increasing at " +
                            std::to_string(s.index));
  }
}

std::vector<SubtitleSegment> parse_srt(std::string_view content,
                                       const std::string &talk_id) {
  if (content.substr(0, 3) == "\xEF\xBB\xBF") content.remove_prefix(3);
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= content.size()) {
    std::size_t nl = content.find('\n', pos);
    if (nl == std::string_view::npos) nl = content.size();
    std::string_view l = content.substr(pos, nl - pos);
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
    lines.push_back(l);
    pos = nl + 1;
  }

  std::vector<SubtitleSegment> segs;
  std::size_t i = 0;
  while (i < lines.size()) {
    if (trim(lines[i]).empty()) {
      ++i;
      continue;
    }
    const std::size_t number_line = i + 1;
    std::string_view num = trim(lines[i]);
    if (!all_digits(num)) throw ParseError("expected block number, got '" + std::string(num) + "'", number_line);
    long long number = std::stoll(std::string(num));
    if (number < 1) throw ParseError("block numbers start at 1", number_line);
    ++i;
    if (i >= lines.size()) throw ParseError("missing timestamp line", number_line);
    std::string_view ts = trim(lines[i]);
    std::size_t arrow = ts.find("-->");
    if (arrow == std::string_view::npos) throw ParseError("malformed timestamp line", i + 1);
    SubtitleSegment seg;
    seg.talk_id = talk_id;
    seg.index = number - 1;
    seg.start_ms = parse_srt_time(trim(ts.substr(0, arrow)), i + 1);
    // Position settings may follow the end time ("X1:..."); keep the first field.
    std::string_view rest = trim(ts.substr(arrow + 3));
    rest = rest.substr(0, rest.find(' '));
    seg.end_ms = parse_srt_time(rest, i + 1);
    ++i;
    std::string text;
    while (i < lines.size() && !trim(lines[i]).empty()) {
      if (!text.empty()) text += ' ';
      text += lines[i];
      ++i;
    }
    if (!valid_utf8(text)) throw ParseError("text is not valid UTF-8", number_line);
    seg.text = normalize_space(text);
    if (seg.text.empty()) throw ValidationError("line " + std::to_string(number_line) + ": block has no text");
    if (seg.end_ms <= seg.start_ms)
      throw ValidationError("line " + std::to_string(number_line + 1) + ": end " +
                            format_srt_time(seg.end_ms) + " is not after start " +
                            format_srt_time(seg.start_ms));
    segs.push_back(std::move(seg));
  }
  return segs;
}

std::size_t line_of_offset(std::string_view content, std::size_t byte) {
  byte = std::min(byte, content.size());
  return 1 + static_cast<std::size_t>(std::count(content.begin(), content.begin() + byte, '\n'));
}

std::vector<SubtitleSegment> parse_json(std::string_view content,
                                        const std::string &talk_id) {
  if (trim(content).empty()) return {};
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(content);
  } catch (const nlohmann::json::parse_error &e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(),
                     line_of_offset(content, e.byte ? e.byte - 1 : 0));
  }
  if (!j.is_array()) throw ParseError("segments JSON must be an array", 1);
  std::vector<SubtitleSegment> segs;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const auto &e = j[k];
    SubtitleSegment s;
    try {
      s.talk_id = talk_id;
      s.index = e.at("index").get<std::int64_t>();
      s.start_ms = e.at("start_ms").get<std::int64_t>();
      s.end_ms = e.at("end_ms").get<std::int64_t>();
      std::string text = e.at("text").get<std::string>();
      if (!valid_utf8(text)) throw ParseError("segment #" + std::to_string(k) + ": text is not valid UTF-8");
      s.text = normalize_space(text);
    } catch (const nlohmann::json::exception &ex) {
      throw ParseError("segment #" + std::to_string(k) + ": " + ex.what());
    }
    segs.push_back(std::move(s));
  }
  std::stable_sort(segs.begin(), segs.end(),
                   [](const auto &a, const auto &b) { return a.index < b.index; });
  return segs;
}

}  // namespace

std::int64_t parse_srt_time(std::string_view s, std::size_t line) {
  // HH:MM:SS,mmm with 1+ hour digits and exactly 2/2/3 for the rest
  auto bad = [&]() -> std::int64_t {
    throw ParseError("malformed timestamp '" + std::string(s) + "'", line);
  };
  std::size_t c1 = s.find(':');
  if (c1 == std::string_view::npos || c1 == 0) return bad();
  std::size_t c2 = s.find(':', c1 + 1);
  if (c2 != c1 + 3) return bad();
  std::size_t sep = c2 + 3;
  if (sep >= s.size() || (s[sep] != ',' && s[sep] != '.')) return bad();
  if (s.size() != sep + 4) return bad();
  std::string_view hh = s.substr(0, c1), mm = s.substr(c1 + 1, 2),
                   ss = s.substr(c2 + 1, 2), ms = s.substr(sep + 1, 3);
  if (!all_digits(hh) || !all_digits(mm) || !all_digits(ss) || !all_digits(ms)) return bad();
  std::int64_t h = std::stoll(std::string(hh)), m = std::stoll(std::string(mm)),
               sec = std::stoll(std::string(ss)), milli = std::stoll(std::string(ms));
  if (m > 59 || sec > 59) return bad();
  return ((h * 60 + m) * 60 + sec) * 1000 + milli;
}

std::string format_srt_time(std::int64_t ms) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%02lld:%02lld:%02lld,%03lld",
                static_cast<long long>(ms / 3600000), static_cast<long long>((ms / 60000) % 60),
                static_cast<long long>((ms / 1000) % 60), static_cast<long long>(ms % 1000));
  return buf;
}

std::vector<SubtitleSegment> parse_subtitles(std::string_view content,
                                             SubtitleFormat format,
                                             const std::string &talk_id) {
  auto segs = format == SubtitleFormat::kSrt ? parse_srt(content, talk_id)
                                             : parse_json(content, talk_id);
  validate(segs);
  return segs;
}

std::string write_srt(const std::vector<SubtitleSegment> &segments) {
  std::string out;
  for (const auto &s : segments) {
    out += std::to_string(s.index + 1) + "\n";
    out += format_srt_time(s.start_ms) + " --> " + format_srt_time(s.end_ms) + "\n";
    out += s.text + "\n\n";
  }
  return out;
}

std::string write_segments_json(const std::vector<SubtitleSegment> &segments) {
  auto arr = nlohmann::json::array();
  for (const auto &s : segments)
    arr.push_back({{"index", s.index}, {"start_ms", s.start_ms},
                   {"end_ms", s.end_ms}, {"text", s.text}});
  return arr.dump(1) + "\n";
}

}  // namespace idr::corpus
