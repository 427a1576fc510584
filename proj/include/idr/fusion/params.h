// include/idr/fusion/params.h

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

#ifndef IDR_FUSION_PARAMS_H_
#define IDR_FUSION_PARAMS_H_

#include <cstdint>
#include <span>
#include <string_view>

#include <Eigen/Dense>

#include "idr/base/container.h"
#include "idr/fusion/config.h"

namespace idr::fusion {

enum class ParamGroup { kBackbone, kHeads, kStatsHead };

// Every trainable tensor of the fusion head. Vectors are stored as 1 x n
// matrices so the optimizer can treat all entries alike.
struct Params {
  Eigen::MatrixXd prosody_proj;              // Dp x d
  Eigen::MatrixXd pq, pk, pv;                // d x d, prosody attention
  Eigen::MatrixXd gamma;                     // 1 x 1
  Eigen::MatrixXd ln1_g, ln1_b, ln2_g, ln2_b;  // 1 x d
  Eigen::MatrixXd conv1_w, conv1_b;          // 3F x C, 1 x C
  Eigen::MatrixXd conv2_w, conv2_b;          // 3C x C, 1 x C
  Eigen::MatrixXd stats_proj;                // 2C x d
  Eigen::MatrixXd aq, ak, av;                // d x P, pair attention
  Eigen::MatrixXd mlp1_w, mlp1_b;            // 2P x P, 1 x P
  Eigen::MatrixXd mlp2_w, mlp2_b;            // P x P, 1 x P
  Eigen::MatrixXd cls1_w, cls1_b;            // P x P, 1 x P
  Eigen::MatrixXd cls2_w, cls2_b;            // P x K, 1 x K
};

struct ParamInfo {
  std::string_view name;
  Eigen::MatrixXd Params::*member;
  ParamGroup group;
  bool decay;
};

std::span<const ParamInfo> param_table();

// Glorot-uniform weights, zero biases, unit LayerNorm gains, gamma at
// gamma_init.
Params init_params(const FusionConfig &cfg, std::uint64_t seed);
Params zeros_like(const Params &p);

void add_scaled(Params &into, const Params &x, double scale);
double squared_norm(const Params &p);
std::size_t parameter_count(const Params &p);

Container to_container(const FusionConfig &cfg, const Params &p);
// Throws ValidationError when the container is not a fusion checkpoint or
// its shapes disagree with the stored config.
std::pair<FusionConfig, Params> from_container(const Container &c);

}  // namespace idr::fusion

#endif  // IDR_FUSION_PARAMS_H_
