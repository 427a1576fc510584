// include/idr/fusion/backbone.h

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

#ifndef IDR_FUSION_BACKBONE_H_
#define IDR_FUSION_BACKBONE_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "idr/prosody/logmel.h"

namespace idr::fusion {

inline constexpr std::string_view kArg1Open = "<S1>";
inline constexpr std::string_view kArg1Close = "</S1>";
inline constexpr std::string_view kArg2Open = "<S2>";
inline constexpr std::string_view kArg2Close = "</S2>";

// "<S1> arg1 words </S1> <S2> arg2 words </S2>".
std::vector<std::string> build_tokens(std::string_view arg1, std::string_view arg2);

// Half-open token range strictly between an argument's markers.
struct TokenRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  bool empty() const { return begin == end; }
};

// Finds both marker pairs; throws ContractError when a marker is missing,
// repeated or out of order.
std::pair<TokenRange, TokenRange> locate_spans(const std::vector<std::string> &tokens);

struct TokenStates {
  Eigen::MatrixXd hidden;  // tokens x d
  TokenRange arg1, arg2;

  // Rows pooled for an argument. An empty span (masked text) falls back to
  // its two marker rows so the argument still has a representation.
  Eigen::MatrixXd span_rows(int which) const;
};

// Token encoder boundary. Implementations map a marked token sequence (and
// optionally the argument audio) to per-token hidden states.
class BackbonePort {
 public:
  virtual ~BackbonePort() = default;
  virtual int hidden_size() const = 0;
  virtual TokenStates encode(const std::vector<std::string> &tokens, const prosody::LogMel *arg1_audio,
                             const prosody::LogMel *arg2_audio) const = 0;
};

// Deterministic stand-in: row t is E(token_t) + 0.1 * P(t), both drawn from
// splitmix64 streams keyed by the seed and the token text or position.
// Ignores audio and has no trainable parameters.
class StubBackbone : public BackbonePort {
 public:
  explicit StubBackbone(int hidden_size, std::uint64_t seed = 0x1d5eed);
  int hidden_size() const override { return d_; }
  TokenStates encode(const std::vector<std::string> &tokens, const prosody::LogMel *arg1_audio,
                     const prosody::LogMel *arg2_audio) const override;

  Eigen::RowVectorXd token_embedding(std::string_view token) const;
  Eigen::RowVectorXd position_embedding(std::size_t position) const;

 private:
  int d_;
  std::uint64_t seed_;
};

}  // namespace idr::fusion

#endif  // IDR_FUSION_BACKBONE_H_
