// include/idr/fusion/trainer.h

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

#ifndef IDR_FUSION_TRAINER_H_
#define IDR_FUSION_TRAINER_H_

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "idr/fusion/config.h"
#include "idr/fusion/model.h"
#include "idr/fusion/params.h"

namespace idr::fusion {

// w_c = N / (K * N_c); classes absent from the labels get weight 0.
std::vector<double> class_weights(const std::vector<int> &labels, int num_classes);

// Linear warmup to peak over the first ceil(warmup_ratio * total) steps,
// then cosine decay reaching 0 at step total. Steps count from 1.
double lr_at(double peak, double warmup_ratio, std::size_t step, std::size_t total);

// Scales g in place so its global l2 norm is at most max_norm; returns the
// norm before clipping.
double clip_global_norm(Params &g, double max_norm);

// Decoupled weight decay; biases, LayerNorm parameters and gamma are not
// decayed. Per-group learning rates come from the TrainConfig.
class AdamW {
 public:
  explicit AdamW(const Params &like, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8);
  void step(Params &p, const Params &g, const TrainConfig &tc, double lr_scale);
  std::size_t steps() const { return t_; }

 private:
  Params m_, v_;
  double b1_, b2_, eps_;
  std::size_t t_ = 0;
};

// Mean of lambda_cls-weighted CE plus, when lambda_contr > 0, the
// contrastive term over the batch. Gradients are averaged over the batch.
double batch_gradient(const FusionConfig &cfg, const TrainConfig &tc, const Params &w,
                      const std::vector<const EncodedExample *> &batch, const std::vector<double> &weights,
                      Params &grad);

double mean_loss(const FusionConfig &cfg, const Params &w, const std::vector<EncodedExample> &data,
                 const std::vector<double> &weights);

struct HistoryRow {
  int epoch;
  double train_loss, val_loss, lr;
};

std::string history_csv(const std::vector<HistoryRow> &rows);

struct FitResult {
  Params params;  // best validation checkpoint, or last finite one on divergence
  std::vector<HistoryRow> history;
  std::vector<double> class_weights;
  int best_epoch = 0;
  double best_val_loss = 0;
  bool diverged = false;
  bool early_stopped = false;
};

struct FitHooks {
  std::function<void(const HistoryRow &, const Params &)> on_epoch;
};

// Single-threaded and seeded: identical inputs give bit-identical results.
FitResult fit(const FusionConfig &cfg, const TrainConfig &tc, const std::vector<EncodedExample> &train,
              const std::vector<EncodedExample> &val, const FitHooks &hooks = {});

}  // namespace idr::fusion

#endif  // IDR_FUSION_TRAINER_H_
