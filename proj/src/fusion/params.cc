// src/fusion/params.cc

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

#include "idr/fusion/params.h"

#include <cmath>
#include <random>

#include "idr/base/error.h"

namespace idr::fusion {

namespace {

constexpr ParamInfo kTable[] = {
    {"prosody_proj", &Params::prosody_proj, ParamGroup::kHeads, true},
    {"prosody_attn.q", &Params::pq, ParamGroup::kHeads, true},
    {"prosody_attn.k", &Params::pk, ParamGroup::kHeads, true},
    {"prosody_attn.v", &Params::pv, ParamGroup::kHeads, true},
    {"gamma", &Params::gamma, ParamGroup::kHeads, false},
    {"ln1.gain", &Params::ln1_g, ParamGroup::kHeads, false},
    {"ln1.bias", &Params::ln1_b, ParamGroup::kHeads, false},
    {"ln2.gain", &Params::ln2_g, ParamGroup::kHeads, false},
    {"ln2.bias", &Params::ln2_b, ParamGroup::kHeads, false},
    {"conv1.weight", &Params::conv1_w, ParamGroup::kStatsHead, true},
    {"conv1.bias", &Params::conv1_b, ParamGroup::kStatsHead, false},
    {"conv2.weight", &Params::conv2_w, ParamGroup::kStatsHead, true},
    {"conv2.bias", &Params::conv2_b, ParamGroup::kStatsHead, false},
    {"stats_proj", &Params::stats_proj, ParamGroup::kStatsHead, true},
    {"pair_attn.q", &Params::aq, ParamGroup::kHeads, true},
    {"pair_attn.k", &Params::ak, ParamGroup::kHeads, true},
    {"pair_attn.v", &Params::av, ParamGroup::kHeads, true},
    {"mlp1.weight", &Params::mlp1_w, ParamGroup::kHeads, true},
    {"mlp1.bias", &Params::mlp1_b, ParamGroup::kHeads, false},
    {"mlp2.weight", &Params::mlp2_w, ParamGroup::kHeads, true},
    {"mlp2.bias", &Params::mlp2_b, ParamGroup::kHeads, false},
    {"classifier1.weight", &Params::cls1_w, ParamGroup::kHeads, true},
    {"classifier1.bias", &Params::cls1_b, ParamGroup::kHeads, false},
    {"classifier2.weight", &Params::cls2_w, ParamGroup::kHeads, true},
    {"classifier2.bias", &Params::cls2_b, ParamGroup::kHeads, false},
};

Eigen::MatrixXd glorot(Eigen::Index rows, Eigen::Index cols, std::mt19937_64 &rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
  std::uniform_real_distribution<double> u(-limit, limit);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = u(rng);
  return m;
}

}  // namespace

std::span<const ParamInfo> param_table() { return kTable; }

Params init_params(const FusionConfig &cfg, std::uint64_t seed) {
  cfg.validate();
  std::mt19937_64 rng(seed);
  const int d = cfg.d, p = cfg.proj_dim, c = cfg.conv_channels, f = cfg.mel_bins;
  Params w;
  w.prosody_proj = glorot(cfg.prosody_dim, d, rng);
  w.pq = glorot(d, d, rng);
  w.pk = glorot(d, d, rng);
  w.pv = glorot(d, d, rng);
  w.gamma = Eigen::MatrixXd::Constant(1, 1, cfg.gamma_init);
  w.ln1_g = Eigen::MatrixXd::Ones(1, d);
  w.ln1_b = Eigen::MatrixXd::Zero(1, d);
  w.ln2_g = Eigen::MatrixXd::Ones(1, d);
  w.ln2_b = Eigen::MatrixXd::Zero(1, d);
  w.conv1_w = glorot(3 * f, c, rng);
  w.conv1_b = Eigen::MatrixXd::Zero(1, c);
  w.conv2_w = glorot(3 * c, c, rng);
  w.conv2_b = Eigen::MatrixXd::Zero(1, c);
  w.stats_proj = glorot(2 * c, d, rng);
  w.aq = glorot(d, p, rng);
  w.ak = glorot(d, p, rng);
  w.av = glorot(d, p, rng);
  w.mlp1_w = glorot(2 * p, p, rng);
  w.mlp1_b = Eigen::MatrixXd::Zero(1, p);
  w.mlp2_w = glorot(p, p, rng);
  w.mlp2_b = Eigen::MatrixXd::Zero(1, p);
  w.cls1_w = glorot(p, p, rng);
  w.cls1_b = Eigen::MatrixXd::Zero(1, p);
  w.cls2_w = glorot(p, cfg.num_classes, rng);
  w.cls2_b = Eigen::MatrixXd::Zero(1, cfg.num_classes);
  return w;
}

Params zeros_like(const Params &p) {
  Params z;
  for (const auto &info : kTable) {
    const auto &src = p.*info.member;
    z.*info.member = Eigen::MatrixXd::Zero(src.rows(), src.cols());
  }
  return z;
}

void add_scaled(Params &into, const Params &x, double scale) {
  for (const auto &info : kTable) into.*info.member += scale * (x.*info.member);
}

double squared_norm(const Params &p) {
  double s = 0;
  for (const auto &info : kTable) s += (p.*info.member).squaredNorm();
  return s;
}

std::size_t parameter_count(const Params &p) {
  std::size_t n = 0;
  for (const auto &info : kTable) n += static_cast<std::size_t>((p.*info.member).size());
  return n;
}

Container to_container(const FusionConfig &cfg, const Params &p) {
  Container c;
  c.kind = "fusion";
  c.header["config"] = to_json(cfg);
  for (const auto &info : kTable) {
    const auto &m = p.*info.member;
    Tensor t;
    t.shape = {static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols())};
    t.data.reserve(m.size());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) t.data.push_back(m(i, j));
    c.add(std::string(info.name), std::move(t));
  }
  return c;
}

std::pair<FusionConfig, Params> from_container(const Container &c) {
  if (c.kind != "fusion") throw ValidationError("container kind is '" + c.kind + "', expected 'fusion'");
  if (!c.header.contains("config")) throw ValidationError("fusion checkpoint without config");
  FusionConfig cfg = fusion_config_from_json(c.header["config"]);
  Params expect = init_params(cfg, 0);
  Params p;
  for (const auto &info : kTable) {
    const Tensor *t = nullptr;
    try {
      t = &c.at(info.name);
    } catch (const LookupError &) {
      throw ValidationError("checkpoint is missing " + std::string(info.name));
    }
    const auto &ref = expect.*info.member;
    if (t->shape.size() != 2 || t->shape[0] != static_cast<std::size_t>(ref.rows()) ||
        t->shape[1] != static_cast<std::size_t>(ref.cols()))
      throw ValidationError("shape mismatch for " + std::string(info.name));
    auto &m = p.*info.member;
    m.resize(ref.rows(), ref.cols());
    std::size_t k = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = t->data[k++];
  }
  return {cfg, p};
}

}  // namespace idr::fusion
