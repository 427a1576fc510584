// src/fusion/config.cc

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

#include "idr/fusion/config.h"

#include <cmath>
#include <string>

#include "idr/base/error.h"

namespace idr::fusion {

void FusionConfig::validate() const {
  if (d <= 0 || proj_dim <= 0 || prosody_dim <= 0 || num_classes < 2 || mel_bins <= 0 ||
      conv_channels <= 0)
    throw ContractError("fusion dimensions must be positive");
  if (attn_heads <= 0 || proj_dim % attn_heads != 0)
    throw ContractError("proj_dim " + std::to_string(proj_dim) + " not divisible by " +
                        std::to_string(attn_heads) + " heads");
  if (prosody_heads <= 0 || d % prosody_heads != 0)
    throw ContractError("d " + std::to_string(d) + " not divisible by " + std::to_string(prosody_heads) +
                        " prosody heads");
  if (!(tau > 0)) throw ContractError("tau must be positive");
}

nlohmann::json to_json(const FusionConfig &c) {
  return {{"d", c.d},
          {"proj_dim", c.proj_dim},
          {"attn_heads", c.attn_heads},
          {"prosody_heads", c.prosody_heads},
          {"tau", c.tau},
          {"gamma_init", c.gamma_init},
          {"alpha", c.alpha},
          {"prosody_dim", c.prosody_dim},
          {"num_classes", c.num_classes},
          {"mel_bins", c.mel_bins},
          {"conv_channels", c.conv_channels},
          {"ln_eps", c.ln_eps},
          {"ablation",
           {{"text", c.ablation.text},
            {"audio", c.ablation.audio},
            {"audio_stats", c.ablation.audio_stats},
            {"prosody", c.ablation.prosody}}}};
}

FusionConfig fusion_config_from_json(const nlohmann::json &j) {
  FusionConfig c;
  c.d = j.value("d", c.d);
  c.proj_dim = j.value("proj_dim", c.proj_dim);
  c.attn_heads = j.value("attn_heads", c.attn_heads);
  c.prosody_heads = j.value("prosody_heads", c.prosody_heads);
  c.tau = j.value("tau", c.tau);
  c.gamma_init = j.value("gamma_init", c.gamma_init);
  c.alpha = j.value("alpha", c.alpha);
  c.prosody_dim = j.value("prosody_dim", c.prosody_dim);
  c.num_classes = j.value("num_classes", c.num_classes);
  c.mel_bins = j.value("mel_bins", c.mel_bins);
  c.conv_channels = j.value("conv_channels", c.conv_channels);
  c.ln_eps = j.value("ln_eps", c.ln_eps);
  if (j.contains("ablation")) {
    const auto &a = j["ablation"];
    c.ablation.text = a.value("text", true);
    c.ablation.audio = a.value("audio", true);
    c.ablation.audio_stats = a.value("audio_stats", true);
    c.ablation.prosody = a.value("prosody", true);
  }
  c.validate();
  return c;
}

void TrainConfig::validate() const {
  if (lambda_lm != 0.0) throw ContractError("lambda_lm needs a language-model head, which the stub lacks");
  if (epochs <= 0 || grad_accum <= 0) throw ContractError("epochs and grad_accum must be positive");
  if (warmup_ratio < 0 || warmup_ratio > 1) throw ContractError("warmup_ratio outside [0, 1]");
  for (double w : class_weights)
    if (!(w > 0) || !std::isfinite(w)) throw ContractError("class weights must be positive");
}

nlohmann::json to_json(const TrainConfig &c) {
  return {{"lr_backbone", c.lr_backbone},   {"lr_heads", c.lr_heads},
          {"lr_stats_head", c.lr_stats_head}, {"weight_decay", c.weight_decay},
          {"warmup_ratio", c.warmup_ratio}, {"max_grad_norm", c.max_grad_norm},
          {"epochs", c.epochs},             {"grad_accum", c.grad_accum},
          {"lambda_cls", c.lambda_cls},     {"lambda_lm", c.lambda_lm},
          {"lambda_contr", c.lambda_contr}, {"patience", c.patience},
          {"class_weights", c.class_weights}, {"seed", c.seed}};
}

TrainConfig train_config_from_json(const nlohmann::json &j) {
  TrainConfig c;
  c.lr_backbone = j.value("lr_backbone", c.lr_backbone);
  c.lr_heads = j.value("lr_heads", c.lr_heads);
  c.lr_stats_head = j.value("lr_stats_head", c.lr_stats_head);
  c.weight_decay = j.value("weight_decay", c.weight_decay);
  c.warmup_ratio = j.value("warmup_ratio", c.warmup_ratio);
  c.max_grad_norm = j.value("max_grad_norm", c.max_grad_norm);
  c.epochs = j.value("epochs", c.epochs);
  c.grad_accum = j.value("grad_accum", c.grad_accum);
  c.lambda_cls = j.value("lambda_cls", c.lambda_cls);
  c.lambda_lm = j.value("lambda_lm", c.lambda_lm);
  c.lambda_contr = j.value("lambda_contr", c.lambda_contr);
  c.patience = j.value("patience", c.patience);
  c.class_weights = j.value("class_weights", c.class_weights);
  c.seed = j.value("seed", c.seed);
  c.validate();
  return c;
}

}  // namespace idr::fusion
