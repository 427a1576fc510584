// src/baselines/prosodic.cc

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

#include "idr/baselines/prosodic.h"

#include <cmath>
#include <string>

#include "idr/base/error.h"

namespace idr::baselines {

namespace {

double duration(const prosody::ProsodyMatrix &p) {
  if (p.word_refs.empty()) throw ValidationError("argument has no word timings");
  return p.word_refs.back().end - p.word_refs.front().start;
}

}  // namespace

Eigen::RowVectorXd prosodic_features(const prosody::ProsodyMatrix &arg1, const prosody::ProsodyMatrix &arg2) {
  constexpr int d = prosody::kProsodyDim;
  Eigen::RowVectorXd out(kProsodicDim);
  int at = 0;
  for (const auto *p : {&arg1, &arg2}) {
    if (p->rows.rows() == 0) throw ValidationError("missing prosody for an argument");
    if (p->rows.cols() != d) throw ValidationError("prosody rows must have 9 columns");
    const Eigen::RowVectorXd mean = p->rows.colwise().mean();
    const Eigen::RowVectorXd var =
        (p->rows.rowwise() - mean).array().square().colwise().sum() / static_cast<double>(p->rows.rows());
    out.segment(at, d) = mean;
    out.segment(at + d, d) = var.cwiseSqrt();
    at += 2 * d;
  }
  const double d1 = duration(arg1);
  if (!(d1 > 0)) throw ValidationError("arg1 has zero duration");
  out(at) = duration(arg2) / d1;
  return out;
}

Standardizer Standardizer::fit(const Eigen::MatrixXd &x) {
  if (x.rows() == 0) throw ContractError("cannot standardize zero rows");
  Standardizer s;
  s.mean = x.colwise().mean();
  const Eigen::RowVectorXd var =
      (x.rowwise() - s.mean).array().square().colwise().sum() / static_cast<double>(x.rows());
  s.scale = var.cwiseSqrt();
  return s;
}

Eigen::MatrixXd Standardizer::apply(const Eigen::MatrixXd &x) const {
  if (x.cols() != mean.size()) throw ContractError("standardizer width mismatch");
  Eigen::MatrixXd y = x.rowwise() - mean;
  for (Eigen::Index j = 0; j < y.cols(); ++j) {
    if (scale(j) < 1e-12)
      y.col(j).setZero();
    else
      y.col(j) /= scale(j);
  }
  return y;
}

void save_standardizer(Container &c, std::string_view prefix, const Standardizer &s) {
  const std::string p(prefix);
  const auto n = static_cast<std::size_t>(s.mean.size());
  c.add(p + ".mean", Tensor{{n}, std::vector<double>(s.mean.data(), s.mean.data() + n)});
  c.add(p + ".scale", Tensor{{n}, std::vector<double>(s.scale.data(), s.scale.data() + n)});
}

Standardizer load_standardizer(const Container &c, std::string_view prefix) {
  const std::string p(prefix);
  const Tensor &m = c.at(p + ".mean");
  const Tensor &s = c.at(p + ".scale");
  if (m.data.size() != s.data.size()) throw ValidationError("standardizer sizes differ");
  Standardizer out;
  out.mean = Eigen::Map<const Eigen::RowVectorXd>(m.data.data(), static_cast<Eigen::Index>(m.data.size()));
  out.scale = Eigen::Map<const Eigen::RowVectorXd>(s.data.data(), static_cast<Eigen::Index>(s.data.size()));
  return out;
}

}  // namespace idr::baselines
