// src/fusion/backbone.cc

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

#include "idr/fusion/backbone.h"

#include <cmath>

#include "idr/base/error.h"
#include "idr/base/hash.h"
#include "idr/base/text.h"

namespace idr::fusion {

std::vector<std::string> build_tokens(std::string_view arg1, std::string_view arg2) {
  std::vector<std::string> out{std::string(kArg1Open)};
  for (auto &w : word_tokens(arg1)) out.push_back(std::move(w));
  out.emplace_back(kArg1Close);
  out.emplace_back(kArg2Open);
  for (auto &w : word_tokens(arg2)) out.push_back(std::move(w));
  out.emplace_back(kArg2Close);
  return out;
}

std::pair<TokenRange, TokenRange> locate_spans(const std::vector<std::string> &tokens) {
  const std::string_view markers[] = {kArg1Open, kArg1Close, kArg2Open, kArg2Close};
  std::size_t at[4];
  for (int m = 0; m < 4; ++m) {
    int seen = 0;
    for (std::size_t i = 0; i < tokens.size(); ++i)
      if (tokens[i] == markers[m]) {
        at[m] = i;
        ++seen;
      }
    if (seen != 1)
      throw ContractError("marker " + std::string(markers[m]) + " appears " + std::to_string(seen) +
                          " times");
  }
  if (!(at[0] < at[1] && at[1] < at[2] && at[2] < at[3])) throw ContractError("markers out of order");
  return {{at[0] + 1, at[1]}, {at[2] + 1, at[3]}};
}

Eigen::MatrixXd TokenStates::span_rows(int which) const {
  const TokenRange &r = which == 1 ? arg1 : arg2;
  if (r.empty()) {
    Eigen::MatrixXd m(2, hidden.cols());
    m.row(0) = hidden.row(r.begin - 1);
    m.row(1) = hidden.row(r.end);
    return m;
  }
  return hidden.middleRows(r.begin, r.end - r.begin);
}

StubBackbone::StubBackbone(int hidden_size, std::uint64_t seed) : d_(hidden_size), seed_(seed) {
  if (d_ <= 0) throw ContractError("hidden size must be positive");
}

namespace {

// Uniform on [-sqrt(3), sqrt(3)], i.e. unit variance.
Eigen::RowVectorXd draw(std::uint64_t key, int d) {
  Eigen::RowVectorXd v(d);
  for (int j = 0; j < d; ++j) {
    const std::uint64_t bits = splitmix64(key + static_cast<std::uint64_t>(j) * 0x9E3779B97F4A7C15ull);
    const double u = static_cast<double>(bits >> 11) * 0x1.0p-53;
    v(j) = (2.0 * u - 1.0) * std::sqrt(3.0);
  }
  return v;
}

}  // namespace

Eigen::RowVectorXd StubBackbone::token_embedding(std::string_view token) const {
  return draw(splitmix64(seed_ ^ fnv1a64(token)), d_);
}

Eigen::RowVectorXd StubBackbone::position_embedding(std::size_t position) const {
  return draw(splitmix64(~seed_ ^ splitmix64(position)), d_);
}

TokenStates StubBackbone::encode(const std::vector<std::string> &tokens, const prosody::LogMel *,
                                 const prosody::LogMel *) const {
  TokenStates s;
  std::tie(s.arg1, s.arg2) = locate_spans(tokens);
  s.hidden.resize(static_cast<Eigen::Index>(tokens.size()), d_);
  for (std::size_t t = 0; t < tokens.size(); ++t)
    s.hidden.row(static_cast<Eigen::Index>(t)) = token_embedding(tokens[t]) + 0.1 * position_embedding(t);
  return s;
}

}  // namespace idr::fusion
