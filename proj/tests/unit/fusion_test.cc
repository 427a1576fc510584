// tests/unit/fusion_test.cc

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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "idr/base/error.h"
#include "idr/fusion/backbone.h"
#include "idr/fusion/model.h"
#include "idr/fusion/params.h"
#include "idr/fusion/trainer.h"
#include "support/fusion_fixtures.h"
#include "support/gen.h"

using namespace idr;
using namespace idr::fusion;
using idr::testing::Gen;

namespace {

// Scalar reference implementations, written with plain loops.
using Vec = std::vector<double>;
using Mat = std::vector<Vec>;

Mat to_mat(const Eigen::MatrixXd &m) {
  Mat out(m.rows(), Vec(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

Mat matmul(const Mat &a, const Mat &b) {
  Mat c(a.size(), Vec(b[0].size(), 0.0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

Vec ln_row(const Vec &x, const Vec &g, const Vec &b, double eps = 1e-5) {
  double mu = 0, var = 0;
  for (double v : x) mu += v;
  mu /= x.size();
  for (double v : x) var += (v - mu) * (v - mu);
  var /= x.size();
  Vec y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = (x[i] - mu) / std::sqrt(var + eps) * g[i] + b[i];
  return y;
}

double gelu_ref(double x) { return 0.5 * x * (1 + std::erf(x / std::sqrt(2.0))); }

// Single-head attention of one query row over keys/values.
Vec attend(const Vec &q, const Mat &k, const Mat &v) {
  Vec s(k.size());
  double m = -1e300;
  for (std::size_t j = 0; j < k.size(); ++j) {
    s[j] = 0;
    for (std::size_t c = 0; c < q.size(); ++c) s[j] += q[c] * k[j][c];
    s[j] /= std::sqrt(static_cast<double>(q.size()));
    m = std::max(m, s[j]);
  }
  double z = 0;
  for (double &x : s) z += (x = std::exp(x - m));
  Vec out(v[0].size(), 0.0);
  for (std::size_t j = 0; j < k.size(); ++j)
    for (std::size_t c = 0; c < out.size(); ++c) out[c] += s[j] / z * v[j][c];
  return out;
}

Vec row0(const Eigen::MatrixXd &m) { return to_mat(m)[0]; }

}  // namespace

TEST_SUITE("fusion") {

TEST_CASE("tokens carry both marker pairs") {
  auto t = build_tokens("It rained.", "We stayed in");
  CHECK(t == std::vector<std::string>{"<S1>", "it", "rained", "</S1>", "<S2>", "we", "stayed", "in", "</S2>"});
  auto [a1, a2] = locate_spans(t);
  CHECK(a1.begin == 1);
  CHECK(a1.end == 3);
  CHECK(a2.begin == 5);
  CHECK(a2.end == 8);
}

TEST_CASE("missing or repeated markers are contract violations") {
  StubBackbone stub(8);
  CHECK_THROWS_AS(stub.encode({"<S1>", "a", "</S1>", "b"}, nullptr, nullptr), ContractError);
  CHECK_THROWS_AS(locate_spans({"<S1>", "</S1>", "<S2>", "</S2>", "<S2>"}), ContractError);
  CHECK_THROWS_AS(locate_spans({"<S2>", "</S2>", "<S1>", "</S1>"}), ContractError);
}

TEST_CASE("stub backbone is deterministic and seed dependent") {
  auto tokens = build_tokens("a b c", "d e");
  StubBackbone s1(16, 7), s2(16, 7), s3(16, 8);
  auto h1 = s1.encode(tokens, nullptr, nullptr).hidden;
  CHECK((h1.array() == s2.encode(tokens, nullptr, nullptr).hidden.array()).all());
  CHECK((h1.array() != s3.encode(tokens, nullptr, nullptr).hidden.array()).any());
  CHECK(h1.row(1).isApprox(s1.token_embedding("a") + 0.1 * s1.position_embedding(1)));
}

TEST_CASE("permuting tokens outside the spans only moves rows outside the spans") {
  Gen g(31);
  StubBackbone stub(12, 99);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::string> t;
    std::vector<std::size_t> outside;
    auto outside_words = [&] {
      for (int i = g.integer(0, 3); i > 0; --i) {
        outside.push_back(t.size());
        t.push_back(g.word());
      }
    };
    auto inside_words = [&] {
      for (int i = g.integer(0, 3); i > 0; --i) t.push_back(g.word());
    };
    outside_words();
    t.emplace_back("<S1>");
    inside_words();
    t.emplace_back("</S1>");
    outside_words();
    t.emplace_back("<S2>");
    inside_words();
    t.emplace_back("</S2>");
    outside_words();
    auto permuted = t;
    std::vector<std::string> words;
    for (auto i : outside) words.push_back(t[i]);
    std::shuffle(words.begin(), words.end(), g.engine());
    for (std::size_t k = 0; k < outside.size(); ++k) permuted[outside[k]] = words[k];

    const auto a = stub.encode(t, nullptr, nullptr);
    const auto b = stub.encode(permuted, nullptr, nullptr);
    for (std::size_t r = 0; r < t.size(); ++r) {
      const bool in_span = (r >= a.arg1.begin && r < a.arg1.end) || (r >= a.arg2.begin && r < a.arg2.end);
      const bool same = (a.hidden.row(r).array() == b.hidden.row(r).array()).all();
      if (in_span) CHECK(same);
      if (!same) CHECK(std::find(outside.begin(), outside.end(), r) != outside.end());
    }
  }
}

TEST_CASE("empty span falls back to its marker rows") {
  StubBackbone stub(4);
  auto s = stub.encode(build_tokens("", "x"), nullptr, nullptr);
  auto rows = s.span_rows(1);
  REQUIRE(rows.rows() == 2);
  CHECK(rows.row(0) == s.hidden.row(0));
  CHECK(rows.row(1) == s.hidden.row(1));
  CHECK(s.span_rows(2).rows() == 1);
}

TEST_CASE("layer primitives") {
  Gen g(5);
  Eigen::MatrixXd x = Eigen::MatrixXd::Random(4, 6) * 3;
  auto a = softmax_rows(x);
  for (Eigen::Index r = 0; r < 4; ++r) CHECK(std::abs(a.row(r).sum() - 1) < 1e-12);
  auto y = layer_norm(x, Eigen::MatrixXd::Ones(1, 6), Eigen::MatrixXd::Zero(1, 6), 0.0, nullptr);
  for (Eigen::Index r = 0; r < 4; ++r) {
    CHECK(std::abs(y.row(r).mean()) < 1e-12);
    CHECK(std::abs(y.row(r).squaredNorm() / 6 - 1) < 1e-12);
  }
  CHECK(gelu(0.0) == 0.0);
  for (double v : {-2.0, -0.3, 0.0, 0.7, 3.0})
    CHECK(std::abs(gelu_grad(v) - (gelu(v + 1e-6) - gelu(v - 1e-6)) / 2e-6) < 1e-8);
}

TEST_CASE("fold is the adjoint of unfold") {
  Gen g(8);
  for (int trial = 0; trial < 50; ++trial) {
    const int t = g.integer(1, 7), f = g.integer(1, 4);
    Eigen::MatrixXd x = Eigen::MatrixXd::Random(t, f), u = Eigen::MatrixXd::Random(t, 3 * f);
    CHECK(std::abs(unfold3(x).cwiseProduct(u).sum() - x.cwiseProduct(fold3(u, f)).sum()) < 1e-12);
  }
}

TEST_CASE("gamma zero equals the prosody-free path") {
  Gen g(11);
  FusionConfig cfg = idr::testing::small_config(2, 2);
  Params w = idr::testing::scrambled_params(cfg, g);
  Eigen::MatrixXd span = idr::testing::random_prosody(g, 3, cfg.d);
  Eigen::MatrixXd p = idr::testing::random_prosody(g, 4, cfg.prosody_dim);
  w.gamma(0, 0) = 0.0;
  auto with = prosody_attend_pool(cfg, w, span, p, true);
  auto without = prosody_attend_pool(cfg, w, span, p, false);
  CHECK((with.array() == without.array()).all());
  Eigen::MatrixXd ln = layer_norm(span, w.ln1_g, w.ln1_b, cfg.ln_eps, nullptr);
  CHECK((without - RowVectorXd(ln.colwise().mean())).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("no words means no prosody term") {
  Gen g(12);
  FusionConfig cfg = idr::testing::small_config(1, 1);
  Params w = idr::testing::scrambled_params(cfg, g);
  Eigen::MatrixXd span = idr::testing::random_prosody(g, 2, cfg.d);
  auto none = prosody_attend_pool(cfg, w, span, Eigen::MatrixXd(0, cfg.prosody_dim), true);
  CHECK((none.array() == prosody_attend_pool(cfg, w, span, {}, false).array()).all());
}

TEST_CASE("single prosody row is copied to every token") {
  Gen g(13);
  FusionConfig cfg = idr::testing::small_config(2, 1);
  Params w = idr::testing::scrambled_params(cfg, g);
  w.pv = Eigen::MatrixXd::Identity(cfg.d, cfg.d);
  Eigen::MatrixXd span = idr::testing::random_prosody(g, 5, cfg.d);
  Eigen::MatrixXd p = idr::testing::random_prosody(g, 1, cfg.prosody_dim);
  ArgTrace t;
  prosody_attend_pool(cfg, w, span, p, true, &t);
  const RowVectorXd p_hat = p * w.prosody_proj;
  for (Eigen::Index r = 0; r < 5; ++r) CHECK((t.attn_out.row(r) - p_hat).cwiseAbs().maxCoeff() < 1e-12);
  for (const auto &a : t.attn.weights) CHECK(((a.array() - 1.0).abs() < 1e-12).all());
}

TEST_CASE("prosody pooling matches a scalar trace at d = 3") {
  Gen g(14);
  FusionConfig cfg;
  cfg.d = 3;
  cfg.prosody_heads = 1;
  cfg.proj_dim = 4;
  cfg.attn_heads = 1;
  cfg.mel_bins = 2;
  cfg.conv_channels = 2;
  Params w = idr::testing::scrambled_params(cfg, g);
  Eigen::MatrixXd span = idr::testing::random_prosody(g, 2, 3);
  Eigen::MatrixXd p = idr::testing::random_prosody(g, 2, cfg.prosody_dim);
  const RowVectorXd h = prosody_attend_pool(cfg, w, span, p, true);

  const Mat H = to_mat(span), P_hat = matmul(to_mat(p), to_mat(w.prosody_proj));
  const Mat Q = matmul(H, to_mat(w.pq)), K = matmul(P_hat, to_mat(w.pk)), V = matmul(P_hat, to_mat(w.pv));
  Vec pooled(3, 0.0);
  for (int t = 0; t < 2; ++t) {
    Vec a = attend(Q[t], K, V);
    Vec x(3);
    for (int c = 0; c < 3; ++c) x[c] = H[t][c] + w.gamma(0, 0) * a[c];
    Vec y = ln_row(x, row0(w.ln1_g), row0(w.ln1_b));
    for (int c = 0; c < 3; ++c) pooled[c] += y[c] / 2;
  }
  for (int c = 0; c < 3; ++c) CHECK(h(c) == doctest::Approx(pooled[c]).epsilon(1e-12));
}

TEST_CASE("stats pooling rejects an all-masked segment") {
  FusionConfig cfg = idr::testing::small_config(1, 1);
  Gen g(15);
  Params w = idr::testing::scrambled_params(cfg, g);
  auto m = idr::testing::random_logmel(g, cfg.mel_bins, 0, 4);
  CHECK_THROWS_WITH_AS(stats_pool(cfg, w, m), "empty segment", ContractError);
}

TEST_CASE("stats pooling matches a direct convolution at 4 frames") {
  Gen g(16);
  FusionConfig cfg = idr::testing::small_config(1, 1);
  cfg.d = 4;
  cfg.prosody_heads = 1;
  cfg.mel_bins = 3;
  cfg.conv_channels = 2;
  Params w = idr::testing::scrambled_params(cfg, g);
  auto m = idr::testing::random_logmel(g, 3, 4, 0);
  const RowVectorXd a = stats_pool(cfg, w, m);

  // conv[t][o] = b[o] + sum_k sum_i W[k*in + i][o] * x[t + k - 1][i]
  auto conv = [](const Mat &x, const Eigen::MatrixXd &wt, const Eigen::MatrixXd &b) {
    const int T = static_cast<int>(x.size()), in = static_cast<int>(x[0].size());
    Mat y(T, Vec(b.cols()));
    for (int t = 0; t < T; ++t)
      for (int o = 0; o < b.cols(); ++o) {
        double s = b(0, o);
        for (int k = 0; k < 3; ++k) {
          const int src = t + k - 1;
          if (src < 0 || src >= T) continue;
          for (int i = 0; i < in; ++i) s += wt(k * in + i, o) * x[src][i];
        }
        y[t][o] = s;
      }
    return y;
  };
  Mat x = to_mat(m.frames.transpose());
  Mat h = conv(x, w.conv1_w, w.conv1_b);
  for (auto &r : h)
    for (double &v : r) v = gelu_ref(v);
  Mat y = conv(h, w.conv2_w, w.conv2_b);
  Vec stats(4, 0.0);
  for (int c = 0; c < 2; ++c) {
    double mu = 0, var = 0;
    for (int t = 0; t < 4; ++t) mu += y[t][c] / 4;
    for (int t = 0; t < 4; ++t) var += (y[t][c] - mu) * (y[t][c] - mu) / 4;
    stats[c] = mu;
    stats[2 + c] = std::sqrt(var);
  }
  for (int j = 0; j < 4; ++j) {
    double s = 0;
    for (int k = 0; k < 4; ++k) s += stats[k] * w.stats_proj(k, j);
    CHECK(a(j) == doctest::Approx(s).epsilon(1e-12));
  }
}

TEST_CASE("identical frames give zero spread") {
  Gen g(17);
  FusionConfig cfg = idr::testing::small_config(1, 1);
  Params w = idr::testing::scrambled_params(cfg, g);
  const int f = cfg.mel_bins, c = cfg.conv_channels;

  SUBCASE("single frame") {
    auto m = idr::testing::random_logmel(g, f, 1, 0);
    StatsTrace t;
    auto s = stats_vector(cfg, w, m, &t);
    CHECK((t.sigma.array() == 0.0).all());
    CHECK(stats_pool(cfg, w, m).isApprox(s * w.stats_proj));
  }
  SUBCASE("repeated frame, edge-neutral kernels") {
    // Zero same-padding changes the edge outputs unless the outer taps
    // vanish, so only the centre tap is kept.
    w.conv1_w.topRows(f).setZero();
    w.conv1_w.bottomRows(f).setZero();
    w.conv2_w.topRows(c).setZero();
    w.conv2_w.bottomRows(c).setZero();
    auto m = idr::testing::random_logmel(g, f, 6, 2);
    for (int t = 1; t < 6; ++t) m.frames.col(t) = m.frames.col(0);
    StatsTrace t;
    auto s = stats_vector(cfg, w, m, &t);
    CHECK((t.sigma.array() == 0.0).all());
    RowVectorXd mu0(2 * c);
    mu0 << t.mu, RowVectorXd::Zero(c);
    CHECK((stats_pool(cfg, w, m) - mu0 * w.stats_proj).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(s == mu0);
  }
}

TEST_CASE("masked padding never changes the pooled vector") {
  Gen g(18);
  for (int trial = 0; trial < 40; ++trial) {
    FusionConfig cfg = idr::testing::small_config(1, 1);
    Params w = idr::testing::scrambled_params(cfg, g);
    auto m = idr::testing::random_logmel(g, cfg.mel_bins, g.integer(1, 8), 0);
    auto padded = idr::testing::random_logmel(g, cfg.mel_bins, 0, g.integer(1, 64));
    prosody::LogMel joined;
    joined.frames.resize(cfg.mel_bins, m.frames.cols() + padded.frames.cols());
    joined.frames << m.frames, padded.frames * 100;
    joined.mask = m.mask;
    joined.mask.insert(joined.mask.end(), padded.mask.begin(), padded.mask.end());
    CHECK((stats_pool(cfg, w, m) - stats_pool(cfg, w, joined)).cwiseAbs().maxCoeff() < 1e-12);
    StatsTrace t;
    stats_vector(cfg, w, joined, &t);
    CHECK((t.sigma.array() >= 0).all());
  }
}

TEST_CASE("fuse_audio") {
  Gen g(19);
  FusionConfig cfg = idr::testing::small_config(1, 1);
  cfg.d = 4;
  cfg.prosody_heads = 1;
  Params w = idr::testing::scrambled_params(cfg, g);
  RowVectorXd h = RowVectorXd::Random(4), a = RowVectorXd::Random(4);
  const RowVectorXd plain = layer_norm(h, w.ln2_g, w.ln2_b, cfg.ln_eps, nullptr);
  CHECK(fuse_audio(cfg, w, h, a, false) == plain);
  CHECK(fuse_audio(cfg, w, h, RowVectorXd::Zero(4), true) == plain);
  FusionConfig zero_alpha = cfg;
  zero_alpha.alpha = 0;
  CHECK(fuse_audio(zero_alpha, w, h, a, true) == plain);

  Vec x(4);
  for (int c = 0; c < 4; ++c) x[c] = h(c) + 0.1 * a(c);
  Vec ref = ln_row(x, row0(w.ln2_g), row0(w.ln2_b));
  auto got = fuse_audio(cfg, w, h, a, true);
  for (int c = 0; c < 4; ++c) CHECK(got(c) == doctest::Approx(ref[c]).epsilon(1e-12));
}

TEST_CASE("pair fusion matches a scalar trace at d = proj = 4") {
  Gen g(20);
  FusionConfig cfg;
  cfg.d = 4;
  cfg.proj_dim = 4;
  cfg.attn_heads = 1;
  cfg.prosody_heads = 1;
  cfg.mel_bins = 2;
  cfg.conv_channels = 2;
  Params w = idr::testing::scrambled_params(cfg, g);
  RowVectorXd h1 = RowVectorXd::Random(4), h2 = RowVectorXd::Random(4);
  ForwardTrace t;
  RowVectorXd logits = pair_fuse_classify(cfg, w, h1, h2, &t);

  const Mat H1 = to_mat(h1), H2 = to_mat(h2);
  Vec u = attend(matmul(H1, to_mat(w.aq))[0], matmul(H2, to_mat(w.ak)), matmul(H2, to_mat(w.av)));
  Vec v = attend(matmul(H2, to_mat(w.aq))[0], matmul(H1, to_mat(w.ak)), matmul(H1, to_mat(w.av)));
  Vec c = u;
  c.insert(c.end(), v.begin(), v.end());
  auto dense = [](const Vec &x, const Eigen::MatrixXd &wt, const Eigen::MatrixXd &b) {
    Vec y(wt.cols());
    for (Eigen::Index j = 0; j < wt.cols(); ++j) {
      y[j] = b(0, j);
      for (Eigen::Index i = 0; i < wt.rows(); ++i) y[j] += x[i] * wt(i, j);
    }
    return y;
  };
  Vec m1 = dense(c, w.mlp1_w, w.mlp1_b);
  for (double &x : m1) x = gelu_ref(x);
  Vec z = dense(m1, w.mlp2_w, w.mlp2_b);
  double n = 0;
  for (double x : z) n += x * x;
  for (double &x : z) x /= std::sqrt(n);
  Vec k1 = dense(z, w.cls1_w, w.cls1_b);
  for (double &x : k1) x = gelu_ref(x);
  Vec ref = dense(k1, w.cls2_w, w.cls2_b);
  for (int j = 0; j < 4; ++j) CHECK(logits(j) == doctest::Approx(ref[j]).epsilon(1e-12));
}

TEST_CASE("z is unit length and pair fusion is symmetric") {
  Gen g(21);
  for (int trial = 0; trial < 50; ++trial) {
    FusionConfig cfg = idr::testing::small_config(g.pick(std::vector<int>{1, 2, 4}), g.pick(std::vector<int>{1, 2, 4}));
    Params w = idr::testing::scrambled_params(cfg, g);
    RowVectorXd h1 = RowVectorXd::Random(cfg.d) * 3, h2 = RowVectorXd::Random(cfg.d);
    ForwardTrace t;
    pair_fuse_classify(cfg, w, h1, h2, &t);
    CHECK(std::abs(t.z.norm() - 1) < 1e-6);
    for (const auto &a : t.u_attn.weights) CHECK(std::abs(a.sum() - 1) < 1e-6);
    pair_fuse_classify(cfg, w, h1, h1, &t);
    CHECK(t.u == t.v);
  }
}

TEST_CASE("weighted cross-entropy") {
  auto ce = weighted_ce(RowVectorXd::Zero(4), 2, 1.0);
  CHECK(ce.loss == doctest::Approx(std::log(4.0)).epsilon(1e-15));
  CHECK(ce.dlogits.sum() == doctest::Approx(0.0));
  CHECK_THROWS_AS(weighted_ce(RowVectorXd::Zero(4), 4, 1.0), ContractError);
}

TEST_CASE("doubling the class weight doubles loss and gradients") {
  Gen g(22);
  FusionConfig cfg = idr::testing::small_config(2, 2);
  Params w = idr::testing::scrambled_params(cfg, g);
  StubBackbone stub(cfg.d);
  auto ex = encode(stub, idr::testing::random_example(g, cfg), cfg.ablation);
  auto t = forward(cfg, w, ex);
  Params g1 = zeros_like(w), g2 = zeros_like(w);
  BackwardOptions o;
  o.class_weight = 0.7;
  const double l1 = backward(cfg, w, t, ex.label, g1, o);
  o.class_weight = 1.4;
  const double l2 = backward(cfg, w, t, ex.label, g2, o);
  CHECK(l2 == doctest::Approx(2 * l1).epsilon(1e-14));
  add_scaled(g2, g1, -2.0);
  CHECK(std::sqrt(squared_norm(g2)) < 1e-12 * std::sqrt(squared_norm(g1)));
}

TEST_CASE("analytic gradients match finite differences") {
  Gen g(23);
  for (int heads : {1, 2, 4}) {
    FusionConfig cfg = idr::testing::small_config(heads, 5 - heads == 3 ? 2 : heads);
    Params w = idr::testing::scrambled_params(cfg, g);
    StubBackbone stub(cfg.d, 3);
    auto ex = encode(stub, idr::testing::random_example(g, cfg), cfg.ablation);
    auto r = idr::testing::check_gradients(cfg, w, ex, g.real(0.5, 2.0), 1e-4);
    INFO(r.worst);
    CHECK(r.max_rel < 1e-4);
  }
}

TEST_CASE("gradient check holds under every ablation") {
  Gen g(24);
  for (int mask = 0; mask < 16; ++mask) {
    FusionConfig cfg = idr::testing::small_config(2, 2);
    cfg.ablation = {bool(mask & 1), bool(mask & 2), bool(mask & 4), bool(mask & 8)};
    Params w = idr::testing::scrambled_params(cfg, g);
    StubBackbone stub(cfg.d, 3);
    auto ex = encode(stub, idr::testing::random_example(g, cfg), cfg.ablation);
    auto r = idr::testing::check_gradients(cfg, w, ex, 1.0, 1e-4);
    INFO(mask, " ", r.worst);
    CHECK(r.max_rel < 1e-4);
  }
}

TEST_CASE("contrastive gradient matches finite differences") {
  Gen g(25);
  Eigen::MatrixXd z = Eigen::MatrixXd::Random(6, 5);
  z.rowwise().normalize();
  std::vector<int> labels{0, 1, 0, 2, 1, 3};
  Eigen::MatrixXd dz;
  supcon_loss(z, labels, 0.5, &dz);
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    Eigen::MatrixXd up = z, down = z;
    up.data()[i] += 1e-6;
    down.data()[i] -= 1e-6;
    const double n = (supcon_loss(up, labels, 0.5, nullptr) - supcon_loss(down, labels, 0.5, nullptr)) / 2e-6;
    CHECK(dz.data()[i] == doctest::Approx(n).epsilon(1e-6));
  }
  CHECK(supcon_loss(z, {0, 1, 2, 3, 4, 5}, 0.5, nullptr) == 0.0);
}

TEST_CASE("class weights") {
  CHECK(class_weights({0, 1, 2, 3, 0, 1, 2, 3}, 4) == std::vector<double>{1, 1, 1, 1});
  auto w = class_weights({0, 0, 0, 1}, 4);
  CHECK(w[0] == doctest::Approx(4.0 / 12));
  CHECK(w[1] == doctest::Approx(1.0));
  CHECK(w[2] == 0.0);
}

TEST_CASE("schedule reaches peak after warmup and zero at the end") {
  const std::size_t total = 100;
  CHECK(lr_at(5e-5, 0.1, 10, total) == 5e-5);
  CHECK(lr_at(5e-5, 0.1, 5, total) == doctest::Approx(2.5e-5));
  CHECK(lr_at(5e-5, 0.1, total, total) < 1e-20);
  for (std::size_t s = 11; s < total; ++s) CHECK(lr_at(1, 0.1, s + 1, total) <= lr_at(1, 0.1, s, total));
  CHECK_THROWS_AS(lr_at(1, 0.1, 0, total), ContractError);
}

TEST_CASE("global norm clipping") {
  FusionConfig cfg = idr::testing::small_config(1, 1);
  Params g = init_params(cfg, 1);
  const double before = clip_global_norm(g, 1.0);
  CHECK(before > 1.0);
  CHECK(std::sqrt(squared_norm(g)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("accumulated gradient does not depend on sample order") {
  Gen g(26);
  FusionConfig cfg = idr::testing::small_config(2, 2);
  Params w = idr::testing::scrambled_params(cfg, g);
  StubBackbone stub(cfg.d);
  std::vector<EncodedExample> data;
  for (int i = 0; i < 8; ++i) data.push_back(encode(stub, idr::testing::random_example(g, cfg), cfg.ablation));
  TrainConfig tc;
  std::vector<const EncodedExample *> batch;
  for (const auto &e : data) batch.push_back(&e);
  const std::vector<double> weights{1.0, 2.0, 0.5, 1.5};
  Params ref = zeros_like(w);
  batch_gradient(cfg, tc, w, batch, weights, ref);
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(batch.begin(), batch.end(), g.engine());
    Params other = zeros_like(w);
    batch_gradient(cfg, tc, w, batch, weights, other);
    add_scaled(other, ref, -1.0);
    CHECK(std::sqrt(squared_norm(other)) < 1e-10);
  }
}

TEST_CASE("checkpoint container round trip") {
  FusionConfig cfg = idr::testing::small_config(2, 4);
  Params w = init_params(cfg, 77);
  auto bytes = to_container(cfg, w).serialize();
  auto [cfg2, w2] = from_container(Container::deserialize(bytes));
  CHECK(to_json(cfg2) == to_json(cfg));
  for (const auto &info : param_table()) CHECK(w2.*info.member == w.*info.member);
  Container other = to_container(cfg, w);
  other.kind = "logreg";
  CHECK_THROWS_AS(from_container(other), ValidationError);
}

TEST_CASE("config validation") {
  FusionConfig cfg;
  cfg.proj_dim = 510;
  CHECK_THROWS_AS(cfg.validate(), ContractError);
  TrainConfig tc;
  tc.lambda_lm = 0.5;
  CHECK_THROWS_AS(tc.validate(), ContractError);
  CHECK(to_json(train_config_from_json(to_json(TrainConfig{}))) == to_json(TrainConfig{}));
}

}  // TEST_SUITE
