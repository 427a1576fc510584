// src/mining/filters.cc

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

#include "idr/mining/filters.h"

#include <array>
#include <set>

#include "idr/base/text.h"

namespace idr::mining {
namespace {

bool ends_with(std::string_view w, std::string_view suffix) {
  return w.size() >= suffix.size() && w.substr(w.size() - suffix.size()) == suffix;
}

// Code points, not bytes.
std::size_t cp_length(std::string_view w) {
  std::size_t n = 0, pos = 0;
  while (pos < w.size()) {
    next_code_point(w, pos);
    ++n;
  }
  return n;
}

}  // namespace

bool is_subject_pronoun(std::string_view w) {
  static const std::set<std::string, std::less<>> kPron = {
      "i", "you", "he", "she", "it", "we", "they", "there", "this", "that",
      "je", "j", "tu", "il", "elle", "on", "nous", "vous", "ils", "elles", "c", "ce", "\xC3\xA7" "a",
      "yo", "t\xC3\xBA", "\xC3\xA9l", "ella", "nosotros", "nosotras", "vosotros", "ellos",
      "ellas", "usted", "ustedes",
      "ich", "du", "er", "sie", "es", "wir", "ihr", "man"};
  return kPron.count(w) > 0;
}

bool looks_like_adjective_or_adverb(std::string_view w) {
  static const std::set<std::string, std::less<>> kWords = {
      // en
      "much", "many", "good", "bad", "big", "small", "great", "little", "few", "far",
      "long", "well", "fast", "slow", "hard", "easy", "happy", "sad", "tired", "simple",
      "important", "beautiful", "different", "strong", "weak", "hot", "cold", "young",
      "old", "rich", "poor", "high", "low", "deep", "close", "often", "quickly", "very",
      "true", "sure", "proud", "afraid", "excited", "lucky", "nice", "cool", "funny",
      "crazy", "weird", "hungry", "busy", "complex", "clear", "real",
      // fr
      "beau", "belle", "grand", "grande", "petit", "petite", "bon", "bonne", "mauvais",
      "fort", "forte", "loin", "longtemps", "vite", "bien", "mal", "fatigu\xC3\xA9",
      "content", "contente", "triste", "facile", "difficile", "simple", "important",
      "importante", "souvent", "heureux", "heureuse", "jeune", "vieux", "riche", "pauvre",
      "chaud", "froid",
      // es
      "bueno", "buena", "malo", "mala", "grande", "peque\xC3\xB1o", "peque\xC3\xB1" "a",
      "lejos", "bien", "mal", "r\xC3\xA1pido", "f\xC3\xA1" "cil", "dif\xC3\xAD" "cil",
      "cansado", "cansada", "feliz", "triste", "importante", "bonito", "bonita",
      "hermoso", "hermosa", "fuerte", "joven", "viejo", "rico", "pobre", "caliente", "fr\xC3\xAD" "o"};
  if (kWords.count(w)) return true;
  static const std::array<std::string_view, 19> kSuffixes = {
      "ly", "ful", "ous", "ive", "able", "ible", "less", "ish",  // en
      "eux", "euse", "ment", "ique", "if",                      // fr
      "oso", "osa", "mente", "ivo", "iva", "ble"};              // es
  if (cp_length(w) < 5) return false;
  for (auto s : kSuffixes)
    if (ends_with(w, s)) return true;
  return false;
}

RuleResult intensifier_rule(const Explicitation &hit, std::string_view text) {
  RuleResult r;
  if (hit.connective != "so" && hit.connective != "si" && hit.connective != "tan") return r;
  auto tokens = tokenize(text);
  if (hit.token_last >= tokens.size()) return r;
  const Token &next = tokens[hit.token_last];
  if (next.kind != TokenKind::kWord) return r;
  if (is_subject_pronoun(next.text)) return r;
  if (looks_like_adjective_or_adverb(next.text)) {
    r.passed = false;
    r.reason = DropReason::kNonDiscourseIntensifier;
    r.detail = "intensifier: '" + hit.connective + " " + next.text + "'";
  }
  return r;
}

RuleResult quotation_rule(const Explicitation &hit, std::string_view text) {
  RuleResult r;
  int depth = 0;
  bool straight_open = false;
  std::size_t pos = 0;
  while (pos < text.size() && pos < hit.byte_begin) {
    char32_t c = next_code_point(text, pos);
    if (c == U'"') {
      straight_open = !straight_open;
    } else if (c == 0x201C || c == 0x201E || c == 0xAB) {
      ++depth;
    } else if ((c == 0x201D || c == 0xBB) && depth > 0) {
      --depth;
    }
  }
  if (depth > 0 || straight_open) {
    r.passed = false;
    r.reason = DropReason::kNonDiscourseQuoted;
    r.detail = "quoted material";
  }
  return r;
}

RuleResult final_token_rule(const Explicitation &hit, std::string_view text) {
  RuleResult r;
  auto tokens = tokenize(text);
  for (std::size_t k = hit.token_last; k < tokens.size(); ++k)
    if (tokens[k].kind == TokenKind::kWord) return r;
  r.passed = false;
  r.reason = DropReason::kNonDiscourseFinal;
  r.detail = "'" + hit.connective + "' ends the segment";
  return r;
}

RuleResult filler_rule(const Explicitation &hit, std::string_view text) {
  RuleResult r;
  auto tokens = tokenize(text);
  if (hit.token_last >= tokens.size()) return r;  // final_token_rule covers this
  const Token &next = tokens[hit.token_last];
  if (next.kind != TokenKind::kPunct || next.text == ",") return r;
  r.passed = false;
  r.reason = DropReason::kNonDiscourseFiller;
  r.detail = "filler: '" + hit.connective + next.text + "'";
  return r;
}

FilterVerdict apply_discourse_use_filters(const Explicitation &hit, std::string_view text,
                                          FilterTrail &trail) {
  using Rule = RuleResult (*)(const Explicitation &, std::string_view);
  static const std::array<std::pair<const char *, Rule>, 4> kRules = {{
      {"non_discourse.intensifier", &intensifier_rule},
      {"non_discourse.quoted", &quotation_rule},
      {"non_discourse.final_token", &final_token_rule},
      {"non_discourse.filler", &filler_rule},
  }};
  FilterVerdict v;
  for (const auto &[name, rule] : kRules) {
    RuleResult r = rule(hit, text);
    trail.push_back({name, r.passed, r.detail});
    if (!r.passed) {
      v.passed = false;
      v.reason = r.reason;
      v.detail = r.detail;
      return v;
    }
  }
  return v;
}

}  // namespace idr::mining
