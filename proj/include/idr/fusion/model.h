// include/idr/fusion/model.h

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

#ifndef IDR_FUSION_MODEL_H_
#define IDR_FUSION_MODEL_H_

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "idr/fusion/backbone.h"
#include "idr/fusion/config.h"
#include "idr/fusion/layers.h"
#include "idr/fusion/params.h"
#include "idr/prosody/logmel.h"

namespace idr::fusion {

// One relation instance as the model consumes it. Prosody rows are
// talk-normalized word features (W x Dp); audio is the log-mel of each
// argument clip.
struct FusionExample {
  std::string id;
  std::string arg1_text, arg2_text;
  MatrixXd prosody1, prosody2;
  prosody::LogMel audio1, audio2;
  int label = -1;
};

// Backbone output plus the audio-side inputs, with the ablation already
// applied to what the backbone saw.
struct EncodedExample {
  TokenStates states;
  MatrixXd prosody1, prosody2;
  prosody::LogMel audio1, audio2;
  int label = -1;
};

EncodedExample encode(const BackbonePort &backbone, const FusionExample &ex, const Ablation &ablation);

struct StatsTrace {
  std::vector<std::uint8_t> mask;
  MatrixXd u1, z1, g1, u2, y;
  RowVectorXd mu, sigma;
  double n = 0;
};

struct ArgTrace {
  MatrixXd span;
  bool prosody = false;
  MatrixXd p, p_hat, attn_out;
  AttentionCache attn;
  LayerNormCache ln1;
  MatrixXd tokens;  // LN1 output
  RowVectorXd h;
  bool stats = false;
  StatsTrace st;
  RowVectorXd pooled, a;
  LayerNormCache ln2;
  RowVectorXd fused;
};

struct ForwardTrace {
  ArgTrace arg[2];
  AttentionCache u_attn, v_attn;
  RowVectorXd u, v, m1_pre, m1, m2, z, k1_pre, k1, logits, probs;
  double m2_norm = 0;
};

// H~ = LN1(H + gamma * MHA(H, P Wp)), mean-pooled over tokens. With no
// words or prosody disabled the attention term is dropped entirely.
RowVectorXd prosody_attend_pool(const FusionConfig &cfg, const Params &w, const MatrixXd &span,
                                const MatrixXd &prosody, bool use_prosody, ArgTrace *trace = nullptr);

// Two masked convolutions (GELU between), then masked mean and standard
// deviation over time. Returns [mu, sigma] (1 x 2C); throws ContractError
// ("empty segment") when every frame is masked.
RowVectorXd stats_vector(const FusionConfig &cfg, const Params &w, const prosody::LogMel &audio,
                         StatsTrace *trace = nullptr);
// [mu, sigma] projected to the backbone width.
RowVectorXd stats_pool(const FusionConfig &cfg, const Params &w, const prosody::LogMel &audio,
                       StatsTrace *trace = nullptr);

// LN2(h + alpha * a); a is ignored when use_stats is false.
RowVectorXd fuse_audio(const FusionConfig &cfg, const Params &w, const RowVectorXd &h,
                       const RowVectorXd &a, bool use_stats, LayerNormCache *cache = nullptr);

// Pair attention, MLP, l2 normalization, classifier. Fills the pair part of
// the trace; returns the logits.
RowVectorXd pair_fuse_classify(const FusionConfig &cfg, const Params &w, const RowVectorXd &h1,
                               const RowVectorXd &h2, ForwardTrace *trace);

ForwardTrace forward(const FusionConfig &cfg, const Params &w, const EncodedExample &ex);

struct CrossEntropy {
  double loss;
  RowVectorXd dlogits;
};
CrossEntropy weighted_ce(const RowVectorXd &logits, int label, double weight);

// Supervised contrastive loss over l2-normalized rows of z; anchors without
// a positive are skipped. dz receives dL/dz when non-null.
double supcon_loss(const MatrixXd &z, const std::vector<int> &labels, double tau, MatrixXd *dz);

struct BackwardOptions {
  double class_weight = 1.0;
  double lambda_cls = 1.0;
  const RowVectorXd *dz_extra = nullptr;  // added to dL/dz (contrastive term)
  MatrixXd *dspan1 = nullptr;             // gradient w.r.t. the pooled token rows
  MatrixXd *dspan2 = nullptr;
};

// Accumulates gradients into grad and returns lambda_cls * weighted CE.
double backward(const FusionConfig &cfg, const Params &w, const ForwardTrace &t, int label,
                Params &grad, const BackwardOptions &opts = {});

int predict(const FusionConfig &cfg, const Params &w, const EncodedExample &ex);

}  // namespace idr::fusion

#endif  // IDR_FUSION_MODEL_H_
