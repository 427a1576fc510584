// include/idr/baselines/prosodic.h

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

#ifndef IDR_BASELINES_PROSODIC_H_
#define IDR_BASELINES_PROSODIC_H_

#include <string_view>

#include <Eigen/Dense>

#include "idr/base/container.h"
#include "idr/prosody/features.h"

namespace idr::baselines {

inline constexpr int kProsodicDim = 2 * 2 * prosody::kProsodyDim + 1;  // 37

// [mean(P1), std(P1), mean(P2), std(P2), dur(arg2) / dur(arg1)]. Means and
// population standard deviations run over words; an argument's duration
// spans its first word start to its last word end. Throws ValidationError
// when either argument has no words or arg1 has zero duration.
Eigen::RowVectorXd prosodic_features(const prosody::ProsodyMatrix &arg1, const prosody::ProsodyMatrix &arg2);

// Column z-scoring fitted on training rows; constant columns map to 0.
struct Standardizer {
  Eigen::RowVectorXd mean, scale;

  static Standardizer fit(const Eigen::MatrixXd &x);
  Eigen::MatrixXd apply(const Eigen::MatrixXd &x) const;
};

void save_standardizer(Container &c, std::string_view prefix, const Standardizer &s);
Standardizer load_standardizer(const Container &c, std::string_view prefix);

}  // namespace idr::baselines

#endif  // IDR_BASELINES_PROSODIC_H_
