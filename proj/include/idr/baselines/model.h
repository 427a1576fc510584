// include/idr/baselines/model.h

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

#ifndef IDR_BASELINES_MODEL_H_
#define IDR_BASELINES_MODEL_H_

#include <string>
#include <string_view>
#include <vector>

#include "idr/base/container.h"
#include "idr/baselines/logreg.h"
#include "idr/baselines/prosodic.h"
#include "idr/baselines/tfidf.h"
#include "idr/prosody/features.h"

namespace idr::baselines {

enum class BaselineKind { kTfidf, kProsodic, kCombined };

std::string_view baseline_name(BaselineKind k);  // "tfidf", "prosodic", "prosodic+tfidf"
BaselineKind parse_baseline(std::string_view name);

struct BaselineInput {
  std::string arg1_text, arg2_text;
  prosody::ProsodyMatrix prosody1, prosody2;  // unused by the text baseline
  int label = -1;
};

struct BaselineModel {
  BaselineKind kind = BaselineKind::kTfidf;
  PairTfidf tfidf;
  Standardizer standardizer;
  LogRegModel logreg;

  SparseRows features(const std::vector<BaselineInput> &inputs) const;
  std::vector<int> predict(const std::vector<BaselineInput> &inputs) const;

  Container to_container() const;
  static BaselineModel from_container(const Container &c);
};

struct BaselineFit {
  BaselineModel model;
  LogRegFit logreg;
};

// Fits the feature extractors on the training inputs, then the classifier.
BaselineFit fit_baseline(BaselineKind kind, const std::vector<BaselineInput> &train, int num_classes,
                         const std::vector<double> &class_weights, const LogRegOptions &opts = {});

}  // namespace idr::baselines

#endif  // IDR_BASELINES_MODEL_H_
