// include/idr/baselines/logreg.h

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

#ifndef IDR_BASELINES_LOGREG_H_
#define IDR_BASELINES_LOGREG_H_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "idr/base/container.h"
#include "idr/baselines/tfidf.h"

namespace idr::baselines {

struct LogRegModel {
  Eigen::MatrixXd weights;  // features x classes
  Eigen::RowVectorXd bias;  // classes
  double reg_lambda = 0;

  int num_classes() const { return static_cast<int>(bias.size()); }
  Eigen::MatrixXd scores(const SparseRows &x) const;
  Eigen::MatrixXd predict_proba(const SparseRows &x) const;
  std::vector<int> predict(const SparseRows &x) const;
};

struct LogRegOptions {
  double reg_lambda = 1e-3;
  double tol = 1e-6;  // on the gradient norm
  int max_iter = 100000;
  std::optional<std::uint64_t> init_seed;  // zeros when unset
};

struct LogRegFit {
  LogRegModel model;
  int iterations = 0;
  double loss = 0;
  double grad_norm = 0;
  bool converged = false;
  std::vector<double> loss_trace;  // objective after each accepted step
};

// J = (1/N) sum_i w[y_i] * CE_i + (lambda/2) ||W||^2; the bias is not
// penalized. Empty class_weights means all ones.
double logreg_objective(const LogRegModel &m, const SparseRows &x, const std::vector<int> &y,
                        const std::vector<double> &class_weights);

// Full-batch gradient descent. Each iteration tries the Barzilai-Borwein
// step and halves it until the Armijo condition holds, so every accepted
// step lowers J.
LogRegFit logreg_fit(const SparseRows &x, const std::vector<int> &y, int num_classes,
                     const std::vector<double> &class_weights, const LogRegOptions &opts = {});

void save_logreg(Container &c, std::string_view prefix, const LogRegModel &m);
LogRegModel load_logreg(const Container &c, std::string_view prefix);

}  // namespace idr::baselines

#endif  // IDR_BASELINES_LOGREG_H_
