// include/idr/baselines/tfidf.h

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

#ifndef IDR_BASELINES_TFIDF_H_
#define IDR_BASELINES_TFIDF_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/SparseCore>

#include "idr/base/container.h"

namespace idr::baselines {

using SparseRows = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// Raw-count term frequencies times idf = ln((1 + N) / (1 + df)) + 1, then
// optional L2 normalization. Terms are lowercased word tokens; the
// vocabulary is indexed in lexicographic order.
struct TfidfModel {
  std::map<std::string, int, std::less<>> vocabulary;
  std::vector<double> idf;
  bool l2 = true;

  int dim() const { return static_cast<int>(idf.size()); }
  // Unknown terms are ignored; a document with no known term is all zero.
  SparseRows transform(const std::vector<std::string> &docs) const;
  // Raw counts over the vocabulary, before idf and normalization.
  std::map<int, double> term_counts(std::string_view doc) const;
};

// Throws ValidationError when docs is empty or contains no terms at all.
TfidfModel tfidf_fit(const std::vector<std::string> &docs, bool l2 = true);
std::pair<TfidfModel, SparseRows> tfidf_fit_transform(const std::vector<std::string> &docs, bool l2 = true);

// Arg1 and Arg2 each get their own model; the feature vector is the two
// normalized vectors side by side.
struct PairTfidf {
  TfidfModel arg1, arg2;

  int dim() const { return arg1.dim() + arg2.dim(); }
  SparseRows transform(const std::vector<std::string> &arg1_docs,
                       const std::vector<std::string> &arg2_docs) const;
};

PairTfidf pair_tfidf_fit(const std::vector<std::string> &arg1_docs, const std::vector<std::string> &arg2_docs);

void save_tfidf(Container &c, std::string_view prefix, const TfidfModel &m);
TfidfModel load_tfidf(const Container &c, std::string_view prefix);

SparseRows hstack(const SparseRows &a, const SparseRows &b);

}  // namespace idr::baselines

#endif  // IDR_BASELINES_TFIDF_H_
