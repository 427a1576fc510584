// include/idr/base/text.h

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

#ifndef IDR_BASE_TEXT_H_
#define IDR_BASE_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace idr {

bool valid_utf8(std::string_view s);

// Decodes one code point starting at s[pos]; advances pos. Invalid bytes
// decode as U+FFFD and consume one byte.
char32_t next_code_point(std::string_view s, std::size_t &pos);
void append_utf8(std::string &out, char32_t c);

// Simple case mapping covering ASCII, Latin-1, Latin Extended-A, Greek and
// Cyrillic. Scripts without case map to themselves.
char32_t to_lower(char32_t c);
bool is_upper(char32_t c);
bool is_space(char32_t c);
bool is_punct(char32_t c);
// Letters and digits of any script.
bool is_word_char(char32_t c);
// A letter that carries no case distinction (Arabic, CJK, ...).
bool is_caseless_letter(char32_t c);

std::string to_lower(std::string_view s);
// Collapses whitespace runs to one ASCII space and trims both ends.
std::string normalize_space(std::string_view s);
std::string_view trim(std::string_view s);

enum class TokenKind { kWord, kPunct };

struct Token {
  std::string text;   // lowercased for words, verbatim for punctuation
  std::size_t begin;  // byte offsets into the source string
  std::size_t end;
  TokenKind kind;
};

// Word runs and single punctuation marks; whitespace separates tokens and is
// dropped. Apostrophes and hyphens are punctuation, so "j'étais" yields
// "j", "'", "étais".
std::vector<Token> tokenize(std::string_view s);

// Lowercased word tokens only.
std::vector<std::string> word_tokens(std::string_view s);

}  // namespace idr

#endif  // IDR_BASE_TEXT_H_
