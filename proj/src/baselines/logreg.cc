// src/baselines/logreg.cc

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

#include "idr/baselines/logreg.h"

#include <cmath>
#include <random>

#include "idr/base/error.h"

namespace idr::baselines {

Eigen::MatrixXd LogRegModel::scores(const SparseRows &x) const {
  if (x.cols() != weights.rows()) throw ContractError("feature width differs from the model");
  Eigen::MatrixXd s = x * weights;
  s.rowwise() += bias;
  return s;
}

Eigen::MatrixXd LogRegModel::predict_proba(const SparseRows &x) const {
  Eigen::MatrixXd s = scores(x);
  for (Eigen::Index r = 0; r < s.rows(); ++r) {
    s.row(r).array() -= s.row(r).maxCoeff();
    s.row(r) = s.row(r).array().exp().matrix();
    s.row(r) /= s.row(r).sum();
  }
  return s;
}

std::vector<int> LogRegModel::predict(const SparseRows &x) const {
  const Eigen::MatrixXd s = scores(x);
  std::vector<int> out(s.rows());
  for (Eigen::Index r = 0; r < s.rows(); ++r) {
    Eigen::Index best;
    s.row(r).maxCoeff(&best);
    out[r] = static_cast<int>(best);
  }
  return out;
}

namespace {

struct Eval {
  double loss;
  Eigen::MatrixXd gw;
  Eigen::RowVectorXd gb;
};

Eval evaluate(const LogRegModel &m, const SparseRows &x, const std::vector<int> &y,
              const std::vector<double> &cw, bool with_grad) {
  const double n = static_cast<double>(y.size());
  Eigen::MatrixXd s = m.scores(x);
  double loss = 0;
  for (Eigen::Index r = 0; r < s.rows(); ++r) {
    const double w = cw.empty() ? 1.0 : cw[y[r]];
    const double mx = s.row(r).maxCoeff();
    const double lse = mx + std::log((s.row(r).array() - mx).exp().sum());
    loss += w * (lse - s(r, y[r]));
    if (with_grad) {
      s.row(r) = (s.row(r).array() - lse).exp().matrix() * (w / n);
      s(r, y[r]) -= w / n;
    }
  }
  Eval e;
  e.loss = loss / n + 0.5 * m.reg_lambda * m.weights.squaredNorm();
  if (with_grad) {
    e.gw = x.transpose() * s + m.reg_lambda * m.weights;
    e.gb = s.colwise().sum();
  }
  return e;
}

}  // namespace

double logreg_objective(const LogRegModel &m, const SparseRows &x, const std::vector<int> &y,
                        const std::vector<double> &class_weights) {
  return evaluate(m, x, y, class_weights, false).loss;
}

LogRegFit logreg_fit(const SparseRows &x, const std::vector<int> &y, int num_classes,
                     const std::vector<double> &class_weights, const LogRegOptions &opts) {
  if (y.empty() || static_cast<Eigen::Index>(y.size()) != x.rows()) throw ContractError("label count mismatch");
  for (int label : y)
    if (label < 0 || label >= num_classes) throw ContractError("label out of range");
  if (!class_weights.empty() && static_cast<int>(class_weights.size()) != num_classes)
    throw ContractError("class weight count mismatch");
  if (opts.reg_lambda < 0) throw ContractError("reg_lambda must be non-negative");

  LogRegFit f;
  LogRegModel &m = f.model;
  m.reg_lambda = opts.reg_lambda;
  m.weights = Eigen::MatrixXd::Zero(x.cols(), num_classes);
  m.bias = Eigen::RowVectorXd::Zero(num_classes);
  if (opts.init_seed) {
    std::mt19937_64 rng(*opts.init_seed);
    std::normal_distribution<double> nd(0.0, 0.5);
    for (Eigen::Index i = 0; i < m.weights.size(); ++i) m.weights.data()[i] = nd(rng);
    for (Eigen::Index i = 0; i < m.bias.size(); ++i) m.bias(i) = nd(rng);
  }

  Eval cur = evaluate(m, x, y, class_weights, true);
  double step = 1.0;
  Eigen::MatrixXd prev_w, prev_gw;
  Eigen::RowVectorXd prev_b, prev_gb;
  for (f.iterations = 0; f.iterations < opts.max_iter; ++f.iterations) {
    const double gnorm2 = cur.gw.squaredNorm() + cur.gb.squaredNorm();
    f.grad_norm = std::sqrt(gnorm2);
    if (f.grad_norm < opts.tol) {
      f.converged = true;
      break;
    }
    if (f.iterations > 0) {
      const double ss = (m.weights - prev_w).squaredNorm() + (m.bias - prev_b).squaredNorm();
      const double sy = (m.weights - prev_w).cwiseProduct(cur.gw - prev_gw).sum() +
                        (m.bias - prev_b).cwiseProduct(cur.gb - prev_gb).sum();
      step = sy > 0 && std::isfinite(ss / sy) ? ss / sy : step * 2;
    }
    prev_w = m.weights;
    prev_b = m.bias;
    prev_gw = cur.gw;
    prev_gb = cur.gb;
    LogRegModel trial = m;
    bool accepted = false;
    for (int halvings = 0; halvings < 60; ++halvings, step *= 0.5) {
      trial.weights = m.weights - step * cur.gw;
      trial.bias = m.bias - step * cur.gb;
      const double l = logreg_objective(trial, x, y, class_weights);
      if (l <= cur.loss - 1e-4 * step * gnorm2) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;  // no descent left at machine precision
    m = std::move(trial);
    cur = evaluate(m, x, y, class_weights, true);
    f.loss_trace.push_back(cur.loss);
  }
  f.loss = cur.loss;
  f.grad_norm = std::sqrt(cur.gw.squaredNorm() + cur.gb.squaredNorm());
  f.converged = f.grad_norm < opts.tol;
  return f;
}

void save_logreg(Container &c, std::string_view prefix, const LogRegModel &m) {
  const std::string p(prefix);
  c.header[p] = {{"reg_lambda", m.reg_lambda}};
  Tensor w{{static_cast<std::size_t>(m.weights.rows()), static_cast<std::size_t>(m.weights.cols())}, {}};
  for (Eigen::Index i = 0; i < m.weights.rows(); ++i)
    for (Eigen::Index j = 0; j < m.weights.cols(); ++j) w.data.push_back(m.weights(i, j));
  c.add(p + ".weights", std::move(w));
  c.add(p + ".bias", Tensor{{static_cast<std::size_t>(m.bias.size())},
                            std::vector<double>(m.bias.data(), m.bias.data() + m.bias.size())});
}

LogRegModel load_logreg(const Container &c, std::string_view prefix) {
  const std::string p(prefix);
  if (!c.header.contains(p)) throw ValidationError("container lacks logistic regression block '" + p + "'");
  LogRegModel m;
  m.reg_lambda = c.header[p].value("reg_lambda", 0.0);
  const Tensor &w = c.at(p + ".weights");
  const Tensor &b = c.at(p + ".bias");
  if (w.shape.size() != 2 || b.shape.size() != 1 || w.shape[1] != b.shape[0])
    throw ValidationError("logistic regression shapes disagree");
  m.weights.resize(static_cast<Eigen::Index>(w.shape[0]), static_cast<Eigen::Index>(w.shape[1]));
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < m.weights.rows(); ++i)
    for (Eigen::Index j = 0; j < m.weights.cols(); ++j) m.weights(i, j) = w.data[k++];
  m.bias = Eigen::Map<const Eigen::RowVectorXd>(b.data.data(), static_cast<Eigen::Index>(b.data.size()));
  return m;
}

}  // namespace idr::baselines
