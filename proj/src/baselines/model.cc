// src/baselines/model.cc

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

#include "idr/baselines/model.h"

#include "idr/base/error.h"

namespace idr::baselines {

std::string_view baseline_name(BaselineKind k) {
  switch (k) {
    case BaselineKind::kTfidf: return "tfidf";
    case BaselineKind::kProsodic: return "prosodic";
    case BaselineKind::kCombined: return "prosodic+tfidf";
  }
  return "";
}

BaselineKind parse_baseline(std::string_view name) {
  for (auto k : {BaselineKind::kTfidf, BaselineKind::kProsodic, BaselineKind::kCombined})
    if (baseline_name(k) == name) return k;
  throw ValidationError("unknown baseline '" + std::string(name) + "'");
}

namespace {

Eigen::MatrixXd raw_prosodic(const std::vector<BaselineInput> &inputs) {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(inputs.size()), kProsodicDim);
  for (std::size_t i = 0; i < inputs.size(); ++i)
    x.row(static_cast<Eigen::Index>(i)) = prosodic_features(inputs[i].prosody1, inputs[i].prosody2);
  return x;
}

SparseRows text_features(const PairTfidf &t, const std::vector<BaselineInput> &inputs) {
  std::vector<std::string> a1, a2;
  for (const auto &in : inputs) {
    a1.push_back(in.arg1_text);
    a2.push_back(in.arg2_text);
  }
  return t.transform(a1, a2);
}

}  // namespace

SparseRows BaselineModel::features(const std::vector<BaselineInput> &inputs) const {
  switch (kind) {
    case BaselineKind::kTfidf: return text_features(tfidf, inputs);
    case BaselineKind::kProsodic: return standardizer.apply(raw_prosodic(inputs)).sparseView();
    case BaselineKind::kCombined:
      return hstack(standardizer.apply(raw_prosodic(inputs)).sparseView(), text_features(tfidf, inputs));
  }
  throw ContractError("bad baseline kind");
}

std::vector<int> BaselineModel::predict(const std::vector<BaselineInput> &inputs) const {
  return logreg.predict(features(inputs));
}

Container BaselineModel::to_container() const {
  Container c;
  c.kind = "baseline";
  c.header["baseline"] = std::string(baseline_name(kind));
  if (kind != BaselineKind::kProsodic) {
    save_tfidf(c, "tfidf.arg1", tfidf.arg1);
    save_tfidf(c, "tfidf.arg2", tfidf.arg2);
  }
  if (kind != BaselineKind::kTfidf) save_standardizer(c, "standardizer", standardizer);
  save_logreg(c, "logreg", logreg);
  return c;
}

BaselineModel BaselineModel::from_container(const Container &c) {
  if (c.kind != "baseline") throw ValidationError("container kind is '" + c.kind + "', expected 'baseline'");
  BaselineModel m;
  m.kind = parse_baseline(c.header.value("baseline", std::string()));
  if (m.kind != BaselineKind::kProsodic) {
    m.tfidf.arg1 = load_tfidf(c, "tfidf.arg1");
    m.tfidf.arg2 = load_tfidf(c, "tfidf.arg2");
  }
  if (m.kind != BaselineKind::kTfidf) m.standardizer = load_standardizer(c, "standardizer");
  m.logreg = load_logreg(c, "logreg");
  return m;
}

BaselineFit fit_baseline(BaselineKind kind, const std::vector<BaselineInput> &train, int num_classes,
                         const std::vector<double> &class_weights, const LogRegOptions &opts) {
  if (train.empty()) throw ContractError("empty training set");
  BaselineFit f;
  f.model.kind = kind;
  if (kind != BaselineKind::kProsodic) {
    std::vector<std::string> a1, a2;
    for (const auto &in : train) {
      a1.push_back(in.arg1_text);
      a2.push_back(in.arg2_text);
    }
    f.model.tfidf = pair_tfidf_fit(a1, a2);
  }
  if (kind != BaselineKind::kTfidf) f.model.standardizer = Standardizer::fit(raw_prosodic(train));
  std::vector<int> y;
  for (const auto &in : train) y.push_back(in.label);
  f.logreg = logreg_fit(f.model.features(train), y, num_classes, class_weights, opts);
  f.model.logreg = f.logreg.model;
  return f;
}

}  // namespace idr::baselines
