// src/fusion/layers.cc

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

#include "idr/fusion/layers.h"

#include <cmath>
#include <numbers>

#include "idr/base/error.h"

namespace idr::fusion {

double gelu(double x) { return 0.5 * x * (1.0 + std::erf(x / std::numbers::sqrt2)); }

double gelu_grad(double x) {
  const double cdf = 0.5 * (1.0 + std::erf(x / std::numbers::sqrt2));
  const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
  return cdf + x * pdf;
}

MatrixXd gelu(const MatrixXd &x) { return x.unaryExpr([](double v) { return gelu(v); }); }

MatrixXd gelu_backward(const MatrixXd &x, const MatrixXd &dy) {
  return dy.cwiseProduct(x.unaryExpr([](double v) { return gelu_grad(v); }));
}

MatrixXd softmax_rows(const MatrixXd &s) {
  MatrixXd a(s.rows(), s.cols());
  for (Eigen::Index r = 0; r < s.rows(); ++r) {
    const double m = s.row(r).maxCoeff();
    a.row(r) = (s.row(r).array() - m).exp().matrix();
    a.row(r) /= a.row(r).sum();
  }
  return a;
}

MatrixXd softmax_rows_backward(const MatrixXd &a, const MatrixXd &da) {
  const Eigen::VectorXd dot = a.cwiseProduct(da).rowwise().sum();
  return a.cwiseProduct(da.colwise() - dot);
}

MatrixXd layer_norm(const MatrixXd &x, const MatrixXd &gain, const MatrixXd &bias, double eps,
                    LayerNormCache *cache) {
  const auto n = x.cols();
  LayerNormCache c;
  c.xhat.resize(x.rows(), n);
  c.inv_std.resize(x.rows());
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const double mu = x.row(r).mean();
    const double var = (x.row(r).array() - mu).square().sum() / static_cast<double>(n);
    c.inv_std(r) = 1.0 / std::sqrt(var + eps);
    c.xhat.row(r) = (x.row(r).array() - mu) * c.inv_std(r);
  }
  MatrixXd y = (c.xhat.array().rowwise() * gain.row(0).array()).rowwise() + bias.row(0).array();
  if (cache) *cache = std::move(c);
  return y;
}

MatrixXd layer_norm_backward(const MatrixXd &dy, const MatrixXd &gain, const LayerNormCache &c,
                             MatrixXd &dgain, MatrixXd &dbias) {
  const double n = static_cast<double>(dy.cols());
  dgain.row(0) += dy.cwiseProduct(c.xhat).colwise().sum();
  dbias.row(0) += dy.colwise().sum();
  MatrixXd dxhat = dy.array().rowwise() * gain.row(0).array();
  MatrixXd dx(dy.rows(), dy.cols());
  for (Eigen::Index r = 0; r < dy.rows(); ++r) {
    const double s1 = dxhat.row(r).sum();
    const double s2 = dxhat.row(r).dot(c.xhat.row(r));
    dx.row(r) = (c.inv_std(r) / n) * (n * dxhat.row(r).array() - s1 - c.xhat.row(r).array() * s2);
  }
  return dx;
}

MatrixXd attention(const MatrixXd &q_in, const MatrixXd &kv_in, const MatrixXd &wq, const MatrixXd &wk,
                   const MatrixXd &wv, int heads, AttentionCache *cache) {
  const auto d_out = wq.cols();
  if (heads <= 0 || d_out % heads != 0) throw ContractError("attention heads must divide width");
  if (kv_in.rows() == 0) throw ContractError("attention over an empty key set");
  const auto dh = d_out / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));
  AttentionCache c;
  c.q = q_in * wq;
  c.k = kv_in * wk;
  c.v = kv_in * wv;
  MatrixXd out(q_in.rows(), d_out);
  for (int h = 0; h < heads; ++h) {
    const auto cols = Eigen::seqN(h * dh, dh);
    MatrixXd a = softmax_rows(c.q(Eigen::all, cols) * c.k(Eigen::all, cols).transpose() * scale);
    out(Eigen::all, cols) = a * c.v(Eigen::all, cols);
    c.weights.push_back(std::move(a));
  }
  if (cache) {
    c.q_in = q_in;
    c.kv_in = kv_in;
    *cache = std::move(c);
  }
  return out;
}

void attention_backward(const MatrixXd &dout, const AttentionCache &c, const MatrixXd &wq,
                        const MatrixXd &wk, const MatrixXd &wv, int heads, MatrixXd &dwq, MatrixXd &dwk,
                        MatrixXd &dwv, MatrixXd *dq_in, MatrixXd *dkv_in) {
  const auto d_out = wq.cols();
  const auto dh = d_out / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));
  MatrixXd dq(c.q.rows(), d_out), dk(c.k.rows(), d_out), dv(c.v.rows(), d_out);
  for (int h = 0; h < heads; ++h) {
    const auto cols = Eigen::seqN(h * dh, dh);
    const MatrixXd &a = c.weights[h];
    const MatrixXd dout_h = dout(Eigen::all, cols);
    dv(Eigen::all, cols) = a.transpose() * dout_h;
    const MatrixXd ds = softmax_rows_backward(a, dout_h * c.v(Eigen::all, cols).transpose()) * scale;
    dq(Eigen::all, cols) = ds * c.k(Eigen::all, cols);
    dk(Eigen::all, cols) = ds.transpose() * c.q(Eigen::all, cols);
  }
  dwq += c.q_in.transpose() * dq;
  dwk += c.kv_in.transpose() * dk;
  dwv += c.kv_in.transpose() * dv;
  if (dq_in) *dq_in = dq * wq.transpose();
  if (dkv_in) *dkv_in = dk * wk.transpose() + dv * wv.transpose();
}

MatrixXd unfold3(const MatrixXd &x) {
  const auto t = x.rows(), f = x.cols();
  MatrixXd u = MatrixXd::Zero(t, 3 * f);
  for (Eigen::Index i = 0; i < t; ++i) {
    if (i > 0) u.block(i, 0, 1, f) = x.row(i - 1);
    u.block(i, f, 1, f) = x.row(i);
    if (i + 1 < t) u.block(i, 2 * f, 1, f) = x.row(i + 1);
  }
  return u;
}

MatrixXd fold3(const MatrixXd &du, int channels) {
  const auto t = du.rows();
  MatrixXd dx = MatrixXd::Zero(t, channels);
  for (Eigen::Index i = 0; i < t; ++i) {
    if (i > 0) dx.row(i - 1) += du.block(i, 0, 1, channels);
    dx.row(i) += du.block(i, channels, 1, channels);
    if (i + 1 < t) dx.row(i + 1) += du.block(i, 2 * channels, 1, channels);
  }
  return dx;
}

void zero_masked_rows(MatrixXd &x, const std::vector<std::uint8_t> &mask) {
  if (mask.size() != static_cast<std::size_t>(x.rows())) throw ContractError("mask length mismatch");
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    if (!mask[i]) x.row(i).setZero();
}

}  // namespace idr::fusion
