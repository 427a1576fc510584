// src/baselines/tfidf.cc

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

#include "idr/baselines/tfidf.h"

#include <cmath>
#include <set>

#include "idr/base/error.h"
#include "idr/base/text.h"

namespace idr::baselines {

std::map<int, double> TfidfModel::term_counts(std::string_view doc) const {
  std::map<int, double> counts;
  for (const auto &w : word_tokens(doc)) {
    auto it = vocabulary.find(w);
    if (it != vocabulary.end()) counts[it->second] += 1;
  }
  return counts;
}

SparseRows TfidfModel::transform(const std::vector<std::string> &docs) const {
  std::vector<Eigen::Triplet<double>> trips;
  for (std::size_t r = 0; r < docs.size(); ++r) {
    auto counts = term_counts(docs[r]);
    double norm = 0;
    for (auto &[j, v] : counts) {
      v *= idf[j];
      norm += v * v;
    }
    norm = std::sqrt(norm);
    for (const auto &[j, v] : counts)
      trips.emplace_back(static_cast<int>(r), j, l2 && norm > 0 ? v / norm : v);
  }
  SparseRows x(static_cast<Eigen::Index>(docs.size()), dim());
  x.setFromTriplets(trips.begin(), trips.end());
  return x;
}

TfidfModel tfidf_fit(const std::vector<std::string> &docs, bool l2) {
  if (docs.empty()) throw ValidationError("tf-idf needs at least one document");
  std::map<std::string, int, std::less<>> df;
  for (const auto &d : docs) {
    auto words = word_tokens(d);
    for (const auto &w : std::set<std::string>(words.begin(), words.end())) ++df[w];
  }
  if (df.empty()) throw ValidationError("empty vocabulary");
  TfidfModel m;
  m.l2 = l2;
  const double n = static_cast<double>(docs.size());
  int index = 0;
  for (const auto &[term, count] : df) {
    m.vocabulary.emplace(term, index++);
    m.idf.push_back(std::log((1.0 + n) / (1.0 + count)) + 1.0);
  }
  return m;
}

std::pair<TfidfModel, SparseRows> tfidf_fit_transform(const std::vector<std::string> &docs, bool l2) {
  TfidfModel m = tfidf_fit(docs, l2);
  SparseRows x = m.transform(docs);
  return {std::move(m), std::move(x)};
}

SparseRows hstack(const SparseRows &a, const SparseRows &b) {
  if (a.rows() != b.rows()) throw ContractError("hstack row mismatch");
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(a.nonZeros() + b.nonZeros());
  for (int r = 0; r < a.outerSize(); ++r) {
    for (SparseRows::InnerIterator it(a, r); it; ++it) trips.emplace_back(r, it.col(), it.value());
    for (SparseRows::InnerIterator it(b, r); it; ++it) trips.emplace_back(r, a.cols() + it.col(), it.value());
  }
  SparseRows x(a.rows(), a.cols() + b.cols());
  x.setFromTriplets(trips.begin(), trips.end());
  return x;
}

SparseRows PairTfidf::transform(const std::vector<std::string> &arg1_docs,
                                const std::vector<std::string> &arg2_docs) const {
  return hstack(arg1.transform(arg1_docs), arg2.transform(arg2_docs));
}

PairTfidf pair_tfidf_fit(const std::vector<std::string> &arg1_docs, const std::vector<std::string> &arg2_docs) {
  return {tfidf_fit(arg1_docs), tfidf_fit(arg2_docs)};
}

void save_tfidf(Container &c, std::string_view prefix, const TfidfModel &m) {
  std::vector<std::string> terms(m.vocabulary.size());
  for (const auto &[t, i] : m.vocabulary) terms[i] = t;
  c.header[std::string(prefix)] = {{"terms", terms}, {"l2", m.l2}};
  c.add(std::string(prefix) + ".idf", Tensor{{m.idf.size()}, m.idf});
}

TfidfModel load_tfidf(const Container &c, std::string_view prefix) {
  const std::string key(prefix);
  if (!c.header.contains(key)) throw ValidationError("container lacks tf-idf block '" + key + "'");
  TfidfModel m;
  m.l2 = c.header[key].value("l2", true);
  const auto terms = c.header[key]["terms"].get<std::vector<std::string>>();
  m.idf = c.at(key + ".idf").data;
  if (terms.size() != m.idf.size()) throw ValidationError("tf-idf vocabulary and idf sizes differ");
  for (std::size_t i = 0; i < terms.size(); ++i)
    if (!m.vocabulary.emplace(terms[i], static_cast<int>(i)).second)
      throw ValidationError("duplicate tf-idf term '" + terms[i] + "'");
  return m;
}

}  // namespace idr::baselines
