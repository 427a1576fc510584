// include/idr/fusion/config.h

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

#ifndef IDR_FUSION_CONFIG_H_
#define IDR_FUSION_CONFIG_H_

#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

namespace idr::fusion {

// Which inputs the model sees. Audio off also turns off the two
// audio-derived paths (statistics pooling and prosody).
struct Ablation {
  bool text = true;
  bool audio = true;
  bool audio_stats = true;
  bool prosody = true;

  bool use_stats() const { return audio && audio_stats; }
  bool use_prosody() const { return audio && prosody; }
  bool operator==(const Ablation &) const = default;
};

struct FusionConfig {
  int d = 64;             // backbone hidden size
  int proj_dim = 512;
  int attn_heads = 4;     // pair fusion
  int prosody_heads = 4;
  double tau = 0.07;      // only read by the optional contrastive term
  double gamma_init = 0.1;
  double alpha = 0.1;     // fixed audio-stats residual scale
  int prosody_dim = 9;
  int num_classes = 4;
  int mel_bins = 128;
  int conv_channels = 256;
  double ln_eps = 1e-5;
  Ablation ablation;

  // Throws ContractError when a dimension does not divide its heads.
  void validate() const;
};

nlohmann::json to_json(const FusionConfig &c);
FusionConfig fusion_config_from_json(const nlohmann::json &j);

struct TrainConfig {
  double lr_backbone = 5e-5;
  double lr_heads = 5e-5;
  double lr_stats_head = 5e-4;
  double weight_decay = 0.05;
  double warmup_ratio = 0.1;
  double max_grad_norm = 1.0;
  int epochs = 7;
  int grad_accum = 8;
  double lambda_cls = 1.0;
  double lambda_lm = 0.0;
  double lambda_contr = 0.0;
  int patience = 2;
  std::vector<double> class_weights;  // empty: computed from the train split
  std::uint64_t seed = 13;

  void validate() const;
};

nlohmann::json to_json(const TrainConfig &c);
TrainConfig train_config_from_json(const nlohmann::json &j);

}  // namespace idr::fusion

#endif  // IDR_FUSION_CONFIG_H_
