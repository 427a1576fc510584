// src/fusion/model.cc

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

#include "idr/fusion/model.h"

#include <algorithm>
#include <cmath>

#include "idr/base/error.h"

namespace idr::fusion {

namespace {

constexpr double kSigmaFloor = 1e-9;

MatrixXd frames_by_time(const prosody::LogMel &audio, int mel_bins) {
  if (audio.frames.rows() != mel_bins)
    throw ContractError("log-mel has " + std::to_string(audio.frames.rows()) + " bins, model expects " +
                        std::to_string(mel_bins));
  if (audio.mask.size() != static_cast<std::size_t>(audio.frames.cols()))
    throw ContractError("log-mel mask length mismatch");
  return audio.frames.transpose();
}

}  // namespace

EncodedExample encode(const BackbonePort &backbone, const FusionExample &ex, const Ablation &ablation) {
  EncodedExample e;
  const auto tokens = ablation.text ? build_tokens(ex.arg1_text, ex.arg2_text) : build_tokens("", "");
  e.states = ablation.audio ? backbone.encode(tokens, &ex.audio1, &ex.audio2)
                            : backbone.encode(tokens, nullptr, nullptr);
  e.prosody1 = ex.prosody1;
  e.prosody2 = ex.prosody2;
  e.audio1 = ex.audio1;
  e.audio2 = ex.audio2;
  e.label = ex.label;
  return e;
}

RowVectorXd prosody_attend_pool(const FusionConfig &cfg, const Params &w, const MatrixXd &span,
                                const MatrixXd &prosody, bool use_prosody, ArgTrace *trace) {
  if (span.rows() == 0) throw ContractError("empty token span");
  ArgTrace local;
  ArgTrace &t = trace ? *trace : local;
  t.span = span;
  t.prosody = use_prosody && prosody.rows() > 0;
  MatrixXd x;
  if (t.prosody) {
    if (prosody.cols() != cfg.prosody_dim) throw ContractError("prosody width mismatch");
    t.p = prosody;
    t.p_hat = prosody * w.prosody_proj;
    t.attn_out = attention(span, t.p_hat, w.pq, w.pk, w.pv, cfg.prosody_heads, &t.attn);
    x = span + w.gamma(0, 0) * t.attn_out;
  } else {
    x = span;
  }
  t.tokens = layer_norm(x, w.ln1_g, w.ln1_b, cfg.ln_eps, &t.ln1);
  t.h = t.tokens.colwise().mean();
  return t.h;
}

RowVectorXd stats_vector(const FusionConfig &cfg, const Params &w, const prosody::LogMel &audio,
                         StatsTrace *trace) {
  StatsTrace local;
  StatsTrace &s = trace ? *trace : local;
  MatrixXd x = frames_by_time(audio, cfg.mel_bins);
  s.mask = audio.mask;
  s.n = static_cast<double>(std::count_if(s.mask.begin(), s.mask.end(), [](auto m) { return m != 0; }));
  if (s.n == 0) throw ContractError("empty segment");
  zero_masked_rows(x, s.mask);
  s.u1 = unfold3(x);
  s.z1 = (s.u1 * w.conv1_w).rowwise() + w.conv1_b.row(0);
  zero_masked_rows(s.z1, s.mask);
  s.g1 = gelu(s.z1);
  s.u2 = unfold3(s.g1);
  s.y = (s.u2 * w.conv2_w).rowwise() + w.conv2_b.row(0);
  zero_masked_rows(s.y, s.mask);
  // Masked rows of y are zero, so plain column sums are masked sums.
  s.mu = s.y.colwise().sum() / s.n;
  RowVectorXd var = RowVectorXd::Zero(s.y.cols());
  for (Eigen::Index i = 0; i < s.y.rows(); ++i)
    if (s.mask[i]) var += (s.y.row(i) - s.mu).array().square().matrix();
  s.sigma = (var / s.n).cwiseSqrt();
  RowVectorXd out(2 * s.y.cols());
  out << s.mu, s.sigma;
  return out;
}

RowVectorXd stats_pool(const FusionConfig &cfg, const Params &w, const prosody::LogMel &audio,
                       StatsTrace *trace) {
  return stats_vector(cfg, w, audio, trace) * w.stats_proj;
}

RowVectorXd fuse_audio(const FusionConfig &cfg, const Params &w, const RowVectorXd &h,
                       const RowVectorXd &a, bool use_stats, LayerNormCache *cache) {
  MatrixXd x = h;
  if (use_stats) x += cfg.alpha * a;
  return layer_norm(x, w.ln2_g, w.ln2_b, cfg.ln_eps, cache);
}

RowVectorXd pair_fuse_classify(const FusionConfig &cfg, const Params &w, const RowVectorXd &h1,
                               const RowVectorXd &h2, ForwardTrace *trace) {
  ForwardTrace local;
  ForwardTrace &t = trace ? *trace : local;
  // Each argument attends over the other one's single pooled vector.
  t.u = attention(h1, h2, w.aq, w.ak, w.av, cfg.attn_heads, &t.u_attn);
  t.v = attention(h2, h1, w.aq, w.ak, w.av, cfg.attn_heads, &t.v_attn);
  RowVectorXd c(2 * cfg.proj_dim);
  c << t.u, t.v;
  t.m1_pre = c * w.mlp1_w + w.mlp1_b;
  t.m1 = gelu(MatrixXd(t.m1_pre));
  t.m2 = t.m1 * w.mlp2_w + w.mlp2_b;
  t.m2_norm = std::max(t.m2.norm(), 1e-12);
  t.z = t.m2 / t.m2_norm;
  t.k1_pre = t.z * w.cls1_w + w.cls1_b;
  t.k1 = gelu(MatrixXd(t.k1_pre));
  t.logits = t.k1 * w.cls2_w + w.cls2_b;
  t.probs = softmax_rows(t.logits);
  return t.logits;
}

ForwardTrace forward(const FusionConfig &cfg, const Params &w, const EncodedExample &ex) {
  ForwardTrace t;
  const auto &ab = cfg.ablation;
  const MatrixXd *pros[2] = {&ex.prosody1, &ex.prosody2};
  const prosody::LogMel *audio[2] = {&ex.audio1, &ex.audio2};
  for (int i = 0; i < 2; ++i) {
    ArgTrace &a = t.arg[i];
    prosody_attend_pool(cfg, w, ex.states.span_rows(i + 1), *pros[i], ab.use_prosody(), &a);
    a.stats = ab.use_stats();
    if (a.stats) {
      a.pooled = stats_vector(cfg, w, *audio[i], &a.st);
      a.a = a.pooled * w.stats_proj;
    }
    a.fused = fuse_audio(cfg, w, a.h, a.a, a.stats, &a.ln2);
  }
  pair_fuse_classify(cfg, w, t.arg[0].fused, t.arg[1].fused, &t);
  return t;
}

CrossEntropy weighted_ce(const RowVectorXd &logits, int label, double weight) {
  if (label < 0 || label >= logits.size()) throw ContractError("label out of range");
  const double m = logits.maxCoeff();
  const double lse = m + std::log((logits.array() - m).exp().sum());
  CrossEntropy ce;
  ce.loss = weight * (lse - logits(label));
  ce.dlogits = (logits.array() - lse).exp().matrix() * weight;
  ce.dlogits(label) -= weight;
  return ce;
}

double supcon_loss(const MatrixXd &z, const std::vector<int> &labels, double tau, MatrixXd *dz) {
  const auto n = z.rows();
  if (static_cast<std::size_t>(n) != labels.size()) throw ContractError("label count mismatch");
  const MatrixXd s = z * z.transpose() / tau;
  MatrixXd ds = MatrixXd::Zero(n, n);
  double total = 0;
  int anchors = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    int positives = 0;
    for (Eigen::Index j = 0; j < n; ++j) positives += j != i && labels[j] == labels[i];
    if (positives == 0) continue;
    ++anchors;
    double m = -INFINITY;
    for (Eigen::Index j = 0; j < n; ++j)
      if (j != i) m = std::max(m, s(i, j));
    double denom = 0;
    for (Eigen::Index j = 0; j < n; ++j)
      if (j != i) denom += std::exp(s(i, j) - m);
    const double lse = m + std::log(denom);
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const bool pos = labels[j] == labels[i];
      if (pos) total -= (s(i, j) - lse) / positives;
      ds(i, j) = std::exp(s(i, j) - lse) - (pos ? 1.0 / positives : 0.0);
    }
  }
  if (anchors == 0) {
    if (dz) *dz = MatrixXd::Zero(z.rows(), z.cols());
    return 0;
  }
  ds /= anchors;
  if (dz) *dz = (ds + ds.transpose()) * z / tau;
  return total / anchors;
}

namespace {

void stats_backward(const Params &w, const StatsTrace &s, const RowVectorXd &dpooled, Params &g) {
  const auto c = s.y.cols();
  const RowVectorXd dmu = dpooled.head(c);
  const RowVectorXd dsigma = dpooled.tail(c);
  MatrixXd dy = MatrixXd::Zero(s.y.rows(), c);
  for (Eigen::Index i = 0; i < s.y.rows(); ++i) {
    if (!s.mask[i]) continue;
    dy.row(i) = dmu / s.n;
    for (Eigen::Index k = 0; k < c; ++k)
      if (s.sigma(k) >= kSigmaFloor) dy(i, k) += dsigma(k) * (s.y(i, k) - s.mu(k)) / (s.n * s.sigma(k));
  }
  g.conv2_w += s.u2.transpose() * dy;
  g.conv2_b += dy.colwise().sum();
  MatrixXd dg1 = fold3(dy * w.conv2_w.transpose(), static_cast<int>(c));
  zero_masked_rows(dg1, s.mask);
  const MatrixXd dz1 = gelu_backward(s.z1, dg1);
  g.conv1_w += s.u1.transpose() * dz1;
  g.conv1_b += dz1.colwise().sum();
}

}  // namespace

double backward(const FusionConfig &cfg, const Params &w, const ForwardTrace &t, int label,
                Params &g, const BackwardOptions &opts) {
  CrossEntropy ce = weighted_ce(t.logits, label, opts.class_weight);
  const RowVectorXd dlogits = ce.dlogits * opts.lambda_cls;

  g.cls2_w += t.k1.transpose() * dlogits;
  g.cls2_b += dlogits;
  const RowVectorXd dk1_pre = gelu_backward(t.k1_pre, dlogits * w.cls2_w.transpose());
  g.cls1_w += t.z.transpose() * dk1_pre;
  g.cls1_b += dk1_pre;
  RowVectorXd dz = dk1_pre * w.cls1_w.transpose();
  if (opts.dz_extra) dz += *opts.dz_extra;

  const RowVectorXd dm2 = (dz - t.z * t.z.dot(dz)) / t.m2_norm;
  g.mlp2_w += t.m1.transpose() * dm2;
  g.mlp2_b += dm2;
  const RowVectorXd dm1_pre = gelu_backward(t.m1_pre, dm2 * w.mlp2_w.transpose());
  g.mlp1_w += (RowVectorXd(2 * cfg.proj_dim) << t.u, t.v).finished().transpose() * dm1_pre;
  g.mlp1_b += dm1_pre;
  const RowVectorXd dc = dm1_pre * w.mlp1_w.transpose();

  MatrixXd dfused[2] = {MatrixXd::Zero(1, cfg.d), MatrixXd::Zero(1, cfg.d)};
  MatrixXd dq, dkv;
  attention_backward(dc.head(cfg.proj_dim), t.u_attn, w.aq, w.ak, w.av, cfg.attn_heads, g.aq, g.ak, g.av,
                     &dq, &dkv);
  dfused[0] += dq;
  dfused[1] += dkv;
  attention_backward(dc.tail(cfg.proj_dim), t.v_attn, w.aq, w.ak, w.av, cfg.attn_heads, g.aq, g.ak, g.av,
                     &dq, &dkv);
  dfused[1] += dq;
  dfused[0] += dkv;

  MatrixXd *dspan_out[2] = {opts.dspan1, opts.dspan2};
  for (int i = 0; i < 2; ++i) {
    const ArgTrace &a = t.arg[i];
    const MatrixXd dx2 = layer_norm_backward(dfused[i], w.ln2_g, a.ln2, g.ln2_g, g.ln2_b);
    if (a.stats) {
      const RowVectorXd da = cfg.alpha * dx2.row(0);
      g.stats_proj += a.pooled.transpose() * da;
      stats_backward(w, a.st, da * w.stats_proj.transpose(), g);
    }
    const auto n = a.tokens.rows();
    const MatrixXd dtokens = MatrixXd::Constant(n, 1, 1.0 / static_cast<double>(n)) * dx2;
    MatrixXd dx = layer_norm_backward(dtokens, w.ln1_g, a.ln1, g.ln1_g, g.ln1_b);
    MatrixXd dspan = dx;
    if (a.prosody) {
      const double gamma = w.gamma(0, 0);
      g.gamma(0, 0) += dx.cwiseProduct(a.attn_out).sum();
      MatrixXd dq_in, dp_hat;
      attention_backward(gamma * dx, a.attn, w.pq, w.pk, w.pv, cfg.prosody_heads, g.pq, g.pk, g.pv, &dq_in,
                         &dp_hat);
      dspan += dq_in;
      g.prosody_proj += a.p.transpose() * dp_hat;
    }
    if (dspan_out[i]) *dspan_out[i] = std::move(dspan);
  }
  return ce.loss * opts.lambda_cls;
}

int predict(const FusionConfig &cfg, const Params &w, const EncodedExample &ex) {
  const ForwardTrace t = forward(cfg, w, ex);
  Eigen::Index best;
  t.logits.maxCoeff(&best);
  return static_cast<int>(best);
}

}  // namespace idr::fusion
