// src/corpus/lexicon.cc

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

#include "idr/corpus/lexicon.h"

#include <algorithm>

#include "idr/base/error.h"

namespace idr::corpus {
namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> cols;
  std::size_t pos = 0;
  while (true) {
    std::size_t tab = line.find('\t', pos);
    if (tab == std::string_view::npos) {
      cols.push_back(line.substr(pos));
      break;
    }
    cols.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
  return cols;
}

}  // namespace

RelationLabel parse_sense(std::string_view sense) {
  std::string s = to_lower(trim(sense));
  if (s == "cause-effect") return RelationLabel::kCauseEffect;
  if (s == "contrast") return RelationLabel::kContrast;
  if (s == "elaboration") return RelationLabel::kElaboration;
  if (s == "temporal" || s == "temporal-sequence" || s == "temporal-synchronous")
    return RelationLabel::kTemporal;
  throw LookupError("unknown sense '" + std::string(sense) + "'");
}

std::vector<ConnectiveEntry> load_lexicon(std::string_view tsv,
                                          std::string_view language) {
  std::vector<ConnectiveEntry> out;
  std::size_t pos = 0, line_no = 0;
  while (pos <= tsv.size()) {
    std::size_t nl = tsv.find('\n', pos);
    if (nl == std::string_view::npos) nl = tsv.size();
    std::string_view line = tsv.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty() || trim(line).front() == '#') continue;

    auto cols = split_tabs(line);
    if (cols.size() != 3)
      throw ParseError("expected 3 tab-separated columns in row '" + std::string(line) + "'", line_no);
    std::string flag = to_lower(trim(cols[2]));
    bool ambiguous;
    if (flag == "true" || flag == "1" || flag == "yes") {
      ambiguous = true;
    } else if (flag == "false" || flag == "0" || flag == "no") {
      ambiguous = false;
    } else {
      throw ParseError("bad ambiguous flag '" + std::string(cols[2]) + "' in row '" + std::string(line) + "'", line_no);
    }
    if (ambiguous) continue;

    ConnectiveEntry e;
    e.surface = to_lower(normalize_space(cols[0]));
    if (e.surface.empty()) throw ParseError("empty surface in row '" + std::string(line) + "'", line_no);
    if (!valid_utf8(e.surface)) throw ParseError("surface is not valid UTF-8", line_no);
    try {
      e.sense = parse_sense(cols[1]);
    } catch (const LookupError &err) {
      throw ParseError(std::string(err.what()) + " in row '" + std::string(line) + "'", line_no);
    }
    e.language = std::string(language);
    e.ambiguous = false;
    out.push_back(std::move(e));
  }
  return out;
}

std::string write_lexicon(const std::vector<ConnectiveEntry> &entries) {
  std::string out;
  for (const auto &e : entries) {
    out += e.surface;
    out += '\t';
    out += label_name(e.sense);
    out += '\t';
    out += e.ambiguous ? "true" : "false";
    out += '\n';
  }
  return out;
}

std::string match_key(const Token &t) {
  if (t.kind == TokenKind::kPunct && (t.text == "\xE2\x80\x99" || t.text == "`"))
    return "'";
  return t.text;
}

Lexicon::Lexicon(std::string language, const std::vector<ConnectiveEntry> &entries)
    : language_(std::move(language)) {
  for (const auto &e : entries) {
    if (e.ambiguous) continue;
    if (e.language != language_)
      throw ValidationError("entry '" + e.surface + "' is " + e.language +
                            ", lexicon is " + language_);
    std::string surface = to_lower(normalize_space(e.surface));
    auto [it, inserted] = senses_.emplace(surface, e.sense);
    if (!inserted) {
      if (it->second != e.sense)
        throw ValidationError("connective '" + surface + "' listed with two senses");
      continue;
    }
    Pattern p;
    p.surface = surface;
    for (const auto &t : tokenize(surface)) p.tokens.push_back(match_key(t));
    if (p.tokens.empty()) throw ValidationError("connective '" + surface + "' has no tokens");
    by_first_[p.tokens.front()].push_back(std::move(p));
  }
  for (auto &[first, pats] : by_first_) {
    std::sort(pats.begin(), pats.end(), [](const Pattern &a, const Pattern &b) {
      if (a.tokens.size() != b.tokens.size()) return a.tokens.size() > b.tokens.size();
      return a.surface < b.surface;
    });
  }
}

std::optional<RelationLabel> Lexicon::sense_of(std::string_view surface) const {
  auto it = senses_.find(to_lower(normalize_space(surface)));
  if (it == senses_.end()) return std::nullopt;
  return it->second;
}

std::vector<ConnectiveEntry> Lexicon::entries() const {
  std::vector<ConnectiveEntry> out;
  for (const auto &[s, l] : senses_) out.push_back({s, language_, l, false});
  return out;
}

std::optional<ConnectiveMatch> Lexicon::match_at(const std::vector<Token> &tokens,
                                                 std::size_t i) const {
  if (i >= tokens.size() || tokens[i].kind != TokenKind::kWord) return std::nullopt;
  auto it = by_first_.find(tokens[i].text);
  if (it == by_first_.end()) return std::nullopt;
  for (const auto &p : it->second) {
    if (i + p.tokens.size() > tokens.size()) continue;
    bool ok = true;
    for (std::size_t k = 1; k < p.tokens.size() && ok; ++k)
      ok = match_key(tokens[i + k]) == p.tokens[k];
    if (ok) return ConnectiveMatch{i, i + p.tokens.size(), p.surface, senses_.at(p.surface)};
  }
  return std::nullopt;
}

std::vector<ConnectiveMatch> Lexicon::find_all(const std::vector<Token> &tokens) const {
  std::vector<ConnectiveMatch> out;
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (auto m = match_at(tokens, i)) {
      i = m->last;
      out.push_back(std::move(*m));
    } else {
      ++i;
    }
  }
  return out;
}

}  // namespace idr::corpus
