// tests/support/split_oracle.h

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

#ifndef IDR_TESTS_SUPPORT_SPLIT_ORACLE_H_
#define IDR_TESTS_SUPPORT_SPLIT_ORACLE_H_

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "idr/dataset/split.h"
#include "support/gen.h"

namespace idr::testing {

// Worst (split, class) cell deviation from r_j * N_c, in instances.
inline double worst_class_deviation(const std::vector<dataset::TalkLoad> &talks, const std::vector<int> &assign,
                                    const std::array<double, 3> &ratios) {
  std::array<std::array<double, 4>, 3> cells{};
  std::array<double, 4> totals{};
  for (std::size_t i = 0; i < talks.size(); ++i)
    for (int c = 0; c < 4; ++c) {
      cells[assign[i]][c] += talks[i].labels[c];
      totals[c] += talks[i].labels[c];
    }
  double worst = 0;
  for (int j = 0; j < 3; ++j)
    for (int c = 0; c < 4; ++c) worst = std::max(worst, std::abs(cells[j][c] - ratios[j] * totals[c]));
  return worst;
}

using CellTable = std::array<std::array<int, 4>, 3>;

inline CellTable cell_table(const std::vector<dataset::TalkLoad> &talks, const std::vector<int> &assign) {
  CellTable t{};
  for (std::size_t i = 0; i < talks.size(); ++i)
    for (int c = 0; c < 4; ++c) t[assign[i]][c] += talks[i].labels[c];
  return t;
}

struct Optimum {
  double deficit = std::numeric_limits<double>::infinity();
  std::vector<CellTable> optimal_tables;  // per-class split counts of every optimal assignment
  double worst_class = std::numeric_limits<double>::infinity();

  // True when some optimal assignment has every (split, class) count
  // within `slack` instances of ours.
  bool near(const CellTable &ours, int slack) const {
    for (const auto &t : optimal_tables) {
      bool ok = true;
      for (int j = 0; j < 3 && ok; ++j)
        for (int c = 0; c < 4 && ok; ++c) ok = std::abs(t[j][c] - ours[j][c]) <= slack;
      if (ok) return true;
    }
    return false;
  }
};

// Enumerates every assignment in which each positive-ratio split is
// non-empty (and zero-ratio splits are empty).
inline Optimum exhaustive_split(const std::vector<dataset::TalkLoad> &talks, const std::array<double, 3> &ratios) {
  Optimum best;
  std::vector<int> assign(talks.size(), 0);
  const std::size_t n = talks.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    std::array<int, 3> used{};
    for (std::size_t i = 0; i < n; ++i, c /= 3) {
      assign[i] = static_cast<int>(c % 3);
      ++used[assign[i]];
    }
    bool ok = true;
    for (int j = 0; j < 3; ++j) ok = ok && (ratios[j] == 0 ? used[j] == 0 : used[j] > 0);
    if (!ok) continue;
    const double d = dataset::split_deficit(talks, assign, ratios);
    if (d < best.deficit - 1e-9) {
      best.deficit = d;
      best.optimal_tables.clear();
    }
    if (d <= best.deficit + 1e-9) best.optimal_tables.push_back(cell_table(talks, assign));
    best.worst_class = std::min(best.worst_class, worst_class_deviation(talks, assign, ratios));
  }
  return best;
}

// 3..max_talks talks with 1..15 instances each and a per-manifest label skew.
inline std::vector<dataset::TalkLoad> random_talks(Gen &g, int max_talks) {
  std::vector<dataset::TalkLoad> talks(g.integer(3, max_talks));
  std::array<double, 4> skew{};
  for (double &s : skew) s = g.real(0.05, 1.0);
  for (std::size_t i = 0; i < talks.size(); ++i) {
    talks[i].talk_id = "t" + std::to_string(i);
    const int n = g.integer(1, 15);
    std::discrete_distribution<int> d(skew.begin(), skew.end());
    for (int k = 0; k < n; ++k) ++talks[i].labels[d(g.engine())];
  }
  return talks;
}

}  // namespace idr::testing

#endif  // IDR_TESTS_SUPPORT_SPLIT_ORACLE_H_
