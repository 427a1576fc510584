// include/idr/fusion/layers.h

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

#ifndef IDR_FUSION_LAYERS_H_
#define IDR_FUSION_LAYERS_H_

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

// Forward/backward primitives for the fusion model. Everything is row-major
// in the math sense: one row per token or frame. Backward functions
// accumulate parameter gradients into their outputs (+=).
namespace idr::fusion {

using Eigen::MatrixXd;
using Eigen::RowVectorXd;

double gelu(double x);
double gelu_grad(double x);
MatrixXd gelu(const MatrixXd &x);
MatrixXd gelu_backward(const MatrixXd &x, const MatrixXd &dy);

MatrixXd softmax_rows(const MatrixXd &s);
MatrixXd softmax_rows_backward(const MatrixXd &a, const MatrixXd &da);

struct LayerNormCache {
  MatrixXd xhat;
  Eigen::VectorXd inv_std;
};

MatrixXd layer_norm(const MatrixXd &x, const MatrixXd &gain, const MatrixXd &bias, double eps,
                    LayerNormCache *cache);
MatrixXd layer_norm_backward(const MatrixXd &dy, const MatrixXd &gain, const LayerNormCache &c,
                             MatrixXd &dgain, MatrixXd &dbias);

// Multi-head scaled dot-product attention. Queries come from q_in (n x d_in),
// keys and values from kv_in (m x d_in); the per-head scale is
// 1/sqrt(d_out / heads). There is no output projection.
struct AttentionCache {
  MatrixXd q_in, kv_in, q, k, v;
  std::vector<MatrixXd> weights;  // per head, n x m, rows sum to 1
};

MatrixXd attention(const MatrixXd &q_in, const MatrixXd &kv_in, const MatrixXd &wq, const MatrixXd &wk,
                   const MatrixXd &wv, int heads, AttentionCache *cache);
void attention_backward(const MatrixXd &dout, const AttentionCache &c, const MatrixXd &wq,
                        const MatrixXd &wk, const MatrixXd &wv, int heads, MatrixXd &dwq, MatrixXd &dwk,
                        MatrixXd &dwv, MatrixXd *dq_in, MatrixXd *dkv_in);

// Kernel-3 "same" convolution over time as a matrix product on unfolded
// input: row t of the unfold is [x(t-1), x(t), x(t+1)] with zeros past the
// ends. Weights are (3*in) x out, row index tap*in + channel.
MatrixXd unfold3(const MatrixXd &x);
MatrixXd fold3(const MatrixXd &du, int channels);

// Zeroes the rows whose mask entry is 0.
void zero_masked_rows(MatrixXd &x, const std::vector<std::uint8_t> &mask);

}  // namespace idr::fusion

#endif  // IDR_FUSION_LAYERS_H_
