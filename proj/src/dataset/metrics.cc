// src/dataset/metrics.cc

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

#include "idr/dataset/metrics.h"

#include <string>

#include "idr/base/error.h"

namespace idr::dataset {

namespace {

double ratio(double a, double b) { return b == 0 ? 0.0 : a / b; }

}  // namespace

Metrics metrics_from_confusion(const Confusion &c) {
  Metrics m;
  m.confusion = c;
  long total = 0, correct = 0;
  for (int g = 0; g < kClasses; ++g)
    for (int p = 0; p < kClasses; ++p) {
      total += c[g][p];
      if (g == p) correct += c[g][p];
    }
  m.accuracy = ratio(correct, total);
  for (int k = 0; k < kClasses; ++k) {
    long predicted = 0, actual = 0;
    for (int j = 0; j < kClasses; ++j) {
      predicted += c[j][k];
      actual += c[k][j];
    }
    m.precision[k] = ratio(c[k][k], predicted);
    m.recall[k] = ratio(c[k][k], actual);
    // 2TP / (2TP + FP + FN): one rounding, and 0 when the class is absent
    // from both gold and predictions.
    m.f1[k] = ratio(2.0 * c[k][k], static_cast<double>(predicted + actual));
    m.macro_precision += m.precision[k];
    m.macro_recall += m.recall[k];
    m.macro_f1 += m.f1[k];
  }
  m.macro_precision /= kClasses;
  m.macro_recall /= kClasses;
  m.macro_f1 /= kClasses;
  return m;
}

Metrics evaluate(const std::vector<int> &predicted, const std::vector<int> &gold) {
  if (predicted.size() != gold.size()) throw ContractError("prediction and gold lengths differ");
  Confusion c{};
  for (std::size_t i = 0; i < gold.size(); ++i) {
    for (int v : {predicted[i], gold[i]})
      if (v < 0 || v >= kClasses) throw ValidationError("label " + std::to_string(v) + " outside the label set");
    ++c[gold[i]][predicted[i]];
  }
  return metrics_from_confusion(c);
}

nlohmann::ordered_json Metrics::to_json() const {
  nlohmann::ordered_json j;
  j["accuracy"] = accuracy;
  j["macro_precision"] = macro_precision;
  j["macro_recall"] = macro_recall;
  j["macro_f1"] = macro_f1;
  nlohmann::ordered_json per;
  for (auto l : corpus::kAllLabels) {
    const int k = corpus::label_index(l);
    per[std::string(corpus::label_name(l))] = {{"precision", precision[k]}, {"recall", recall[k]}, {"f1", f1[k]}};
  }
  j["per_class"] = per;
  j["confusion"] = confusion;
  return j;
}

}  // namespace idr::dataset
