// src/fusion/trainer.cc

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

#include "idr/fusion/trainer.h"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>

#include "idr/base/error.h"
#include "idr/base/hash.h"

namespace idr::fusion {

std::vector<double> class_weights(const std::vector<int> &labels, int num_classes) {
  std::vector<double> counts(num_classes, 0.0);
  for (int y : labels) {
    if (y < 0 || y >= num_classes) throw ContractError("label out of range");
    counts[y] += 1;
  }
  std::vector<double> w(num_classes, 0.0);
  for (int c = 0; c < num_classes; ++c)
    if (counts[c] > 0) w[c] = static_cast<double>(labels.size()) / (num_classes * counts[c]);
  return w;
}

double lr_at(double peak, double warmup_ratio, std::size_t step, std::size_t total) {
  if (total == 0 || step == 0 || step > total) throw ContractError("schedule step out of range");
  const auto warmup = static_cast<std::size_t>(std::ceil(warmup_ratio * static_cast<double>(total)));
  if (step <= warmup) return peak * static_cast<double>(step) / static_cast<double>(warmup);
  const double progress = static_cast<double>(step - warmup) / static_cast<double>(total - warmup);
  return peak * 0.5 * (1.0 + std::cos(std::numbers::pi * progress));
}

double clip_global_norm(Params &g, double max_norm) {
  const double norm = std::sqrt(squared_norm(g));
  if (norm > max_norm && std::isfinite(norm)) {
    const double s = max_norm / norm;
    for (const auto &info : param_table()) g.*info.member *= s;
  }
  return norm;
}

AdamW::AdamW(const Params &like, double beta1, double beta2, double eps)
    : m_(zeros_like(like)), v_(zeros_like(like)), b1_(beta1), b2_(beta2), eps_(eps) {}

void AdamW::step(Params &p, const Params &g, const TrainConfig &tc, double lr_scale) {
  ++t_;
  const double c1 = 1.0 - std::pow(b1_, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(b2_, static_cast<double>(t_));
  for (const auto &info : param_table()) {
    double lr = tc.lr_heads;
    if (info.group == ParamGroup::kStatsHead) lr = tc.lr_stats_head;
    if (info.group == ParamGroup::kBackbone) lr = tc.lr_backbone;
    lr *= lr_scale;
    auto &w = p.*info.member;
    const auto &gr = g.*info.member;
    auto &m = m_.*info.member;
    auto &v = v_.*info.member;
    m = b1_ * m + (1 - b1_) * gr;
    v = b2_ * v + (1 - b2_) * gr.cwiseProduct(gr);
    if (info.decay) w *= 1.0 - lr * tc.weight_decay;
    w.array() -= lr * (m.array() / c1) / ((v.array() / c2).sqrt() + eps_);
  }
}

double batch_gradient(const FusionConfig &cfg, const TrainConfig &tc, const Params &w,
                      const std::vector<const EncodedExample *> &batch, const std::vector<double> &weights,
                      Params &grad) {
  if (batch.empty()) throw ContractError("empty batch");
  const double b = static_cast<double>(batch.size());
  std::vector<ForwardTrace> traces;
  traces.reserve(batch.size());
  for (const auto *ex : batch) traces.push_back(forward(cfg, w, *ex));

  double contr = 0;
  MatrixXd dz;
  const bool use_contr = tc.lambda_contr > 0 && batch.size() > 1;
  if (use_contr) {
    MatrixXd z(batch.size(), cfg.proj_dim);
    std::vector<int> labels;
    for (std::size_t i = 0; i < batch.size(); ++i) {
      z.row(static_cast<Eigen::Index>(i)) = traces[i].z;
      labels.push_back(batch[i]->label);
    }
    contr = supcon_loss(z, labels, cfg.tau, &dz);
    dz *= tc.lambda_contr * b;
  }

  Params g = zeros_like(w);
  double total = 0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    BackwardOptions o;
    o.class_weight = weights.empty() ? 1.0 : weights.at(batch[i]->label);
    o.lambda_cls = tc.lambda_cls;
    RowVectorXd extra;
    if (use_contr) {
      extra = dz.row(static_cast<Eigen::Index>(i));
      o.dz_extra = &extra;
    }
    total += backward(cfg, w, traces[i], batch[i]->label, g, o);
  }
  add_scaled(grad, g, 1.0 / b);
  return total / b + tc.lambda_contr * contr * (use_contr ? 1.0 : 0.0);
}

double mean_loss(const FusionConfig &cfg, const Params &w, const std::vector<EncodedExample> &data,
                 const std::vector<double> &weights) {
  if (data.empty()) return 0;
  double s = 0;
  for (const auto &ex : data) {
    const ForwardTrace t = forward(cfg, w, ex);
    s += weighted_ce(t.logits, ex.label, weights.empty() ? 1.0 : weights.at(ex.label)).loss;
  }
  return s / static_cast<double>(data.size());
}

std::string history_csv(const std::vector<HistoryRow> &rows) {
  std::string out = "epoch,train_loss,val_loss,lr\n";
  char buf[160];
  for (const auto &r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", r.epoch, r.train_loss, r.val_loss, r.lr);
    out += buf;
  }
  return out;
}

namespace {

// Fisher-Yates over a splitmix64 stream, so orderings do not depend on the
// standard library's distribution implementations.
void shuffle(std::vector<std::size_t> &v, std::uint64_t &state) {
  for (std::size_t i = v.size(); i > 1; --i) {
    state = splitmix64(state);
    const std::size_t j = static_cast<std::size_t>(state % i);
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace

FitResult fit(const FusionConfig &cfg, const TrainConfig &tc, const std::vector<EncodedExample> &train,
              const std::vector<EncodedExample> &val, const FitHooks &hooks) {
  cfg.validate();
  tc.validate();
  if (train.empty()) throw ContractError("empty training set");
  if (val.empty()) throw ContractError("empty validation set");

  FitResult r;
  std::vector<int> labels;
  for (const auto &ex : train) labels.push_back(ex.label);
  r.class_weights = tc.class_weights.empty() ? class_weights(labels, cfg.num_classes) : tc.class_weights;
  if (static_cast<int>(r.class_weights.size()) != cfg.num_classes)
    throw ContractError("class weight count differs from class count");

  Params w = init_params(cfg, tc.seed);
  Params last_finite = w;
  AdamW opt(w);
  const std::size_t batches_per_epoch = (train.size() + tc.grad_accum - 1) / tc.grad_accum;
  const std::size_t total = batches_per_epoch * static_cast<std::size_t>(tc.epochs);
  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);
  std::uint64_t rng = splitmix64(tc.seed ^ 0x7261696eull);

  r.best_val_loss = std::numeric_limits<double>::infinity();
  r.params = w;
  int since_best = 0;
  double lr = 0;
  for (int epoch = 1; epoch <= tc.epochs; ++epoch) {
    shuffle(order, rng);
    double loss_sum = 0;
    for (std::size_t b = 0; b < batches_per_epoch; ++b) {
      std::vector<const EncodedExample *> batch;
      for (std::size_t i = b * tc.grad_accum; i < std::min(train.size(), (b + 1) * tc.grad_accum); ++i)
        batch.push_back(&train[order[i]]);
      Params g = zeros_like(w);
      const double loss = batch_gradient(cfg, tc, w, batch, r.class_weights, g);
      const double norm = clip_global_norm(g, tc.max_grad_norm);
      if (!std::isfinite(loss) || !std::isfinite(norm)) {
        r.diverged = true;
        r.params = last_finite;
        return r;
      }
      loss_sum += loss * static_cast<double>(batch.size());
      const std::size_t step = opt.steps() + 1;
      const double scale = lr_at(1.0, tc.warmup_ratio, step, total);
      opt.step(w, g, tc, scale);
      lr = tc.lr_heads * scale;
    }
    HistoryRow row{epoch, loss_sum / static_cast<double>(train.size()), mean_loss(cfg, w, val, r.class_weights),
                   lr};
    r.history.push_back(row);
    if (!std::isfinite(row.val_loss)) {
      r.diverged = true;
      r.params = last_finite;
      return r;
    }
    last_finite = w;
    if (hooks.on_epoch) hooks.on_epoch(row, w);
    if (row.val_loss < r.best_val_loss) {
      r.best_val_loss = row.val_loss;
      r.best_epoch = epoch;
      r.params = w;
      since_best = 0;
    } else if (++since_best >= tc.patience) {
      r.early_stopped = true;
      break;
    }
  }
  return r;
}

}  // namespace idr::fusion
