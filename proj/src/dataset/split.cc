// src/dataset/split.cc

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

#include "idr/dataset/split.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "idr/base/error.h"
#include "idr/base/hash.h"

namespace idr::dataset {

void SplitSpec::validate() const {
  double sum = 0;
  for (double r : ratios) {
    if (!(r >= 0) || !std::isfinite(r)) throw ValidationError("split ratios must be non-negative");
    sum += r;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw ValidationError("split ratios sum to " + std::to_string(sum) + ", expected 1");
}

SplitSpec default_split_spec(std::string_view language) {
  SplitSpec s;
  if (language == "fr") s.ratios = {0.55, 0.15, 0.3};
  if (language == "es") s.ratios = {0.25, 0.25, 0.5};
  return s;
}

int TalkLoad::total() const { return std::accumulate(labels.begin(), labels.end(), 0); }

std::vector<TalkLoad> talk_loads(const std::vector<ManifestEntry> &entries) {
  std::map<std::string, TalkLoad> by_talk;
  for (const auto &e : entries) {
    auto &t = by_talk[e.talk_id];
    t.talk_id = e.talk_id;
    ++t.labels[corpus::label_index(e.label)];
  }
  std::vector<TalkLoad> out;
  for (auto &[id, t] : by_talk) out.push_back(std::move(t));
  return out;
}

namespace {

constexpr int kLabels = corpus::kNumLabels;

// Running per-split counts with the deficit of the current state.
struct Tally {
  std::array<double, 3> ratios;
  std::array<double, kLabels> class_totals{};
  double total = 0;
  std::array<std::array<double, kLabels>, 3> cells{};
  std::array<double, 3> sizes{};
  std::array<int, 3> talks{};

  double split_term(int j) const {
    double s = std::abs(sizes[j] - ratios[j] * total);
    for (int c = 0; c < kLabels; ++c) s += std::abs(cells[j][c] - ratios[j] * class_totals[c]);
    return s;
  }
  void add(const TalkLoad &t, int j, int sign) {
    for (int c = 0; c < kLabels; ++c) cells[j][c] += sign * t.labels[c];
    sizes[j] += sign * t.total();
    talks[j] += sign;
  }
};

}  // namespace

double split_deficit(const std::vector<TalkLoad> &talks, const std::vector<int> &assignment,
                     const std::array<double, 3> &ratios) {
  Tally t{ratios};
  for (const auto &talk : talks) {
    for (int c = 0; c < kLabels; ++c) t.class_totals[c] += talk.labels[c];
    t.total += talk.total();
  }
  for (std::size_t i = 0; i < talks.size(); ++i) t.add(talks[i], assignment.at(i), +1);
  return t.split_term(0) + t.split_term(1) + t.split_term(2);
}

namespace {

constexpr int kRestarts = 256;
constexpr int kKicks = 256;
constexpr int kKickSize = 3;

struct Search {
  const std::vector<TalkLoad> &talks;
  const std::vector<std::size_t> &order;
  const std::vector<int> &positive;
  Tally t;
  std::vector<int> assign;

  void place(std::size_t i, int j) {
    assign[i] = j;
    t.add(talks[i], j, +1);
  }

  // Largest talks first, each where the deficit grows least; the last
  // talks are forced into still-empty positive-ratio splits.
  void greedy() {
    for (std::size_t k = 0; k < order.size(); ++k) {
      const std::size_t i = order[k];
      std::size_t empty = 0;
      for (int j : positive) empty += t.talks[j] == 0;
      const bool force = order.size() - k <= empty;
      int best = -1;
      double best_delta = 0;
      for (int j : positive) {
        if (force && t.talks[j] != 0) continue;
        const double before = t.split_term(j);
        t.add(talks[i], j, +1);
        const double delta = t.split_term(j) - before;
        t.add(talks[i], j, -1);
        if (best < 0 || delta < best_delta - 1e-12) {
          best = j;
          best_delta = delta;
        }
      }
      place(i, best);
    }
  }

  // Uniform random start that still covers every positive-ratio split.
  void random_start(std::uint64_t &rng) {
    std::vector<std::size_t> shuffled = order;
    for (std::size_t k = shuffled.size(); k > 1; --k) {
      rng = splitmix64(rng);
      std::swap(shuffled[k - 1], shuffled[rng % k]);
    }
    for (std::size_t k = 0; k < shuffled.size(); ++k) {
      rng = splitmix64(rng);
      place(shuffled[k], k < positive.size() ? positive[k] : positive[rng % positive.size()]);
    }
  }

  void load(const std::vector<int> &a) {
    for (std::size_t i = 0; i < a.size(); ++i) place(i, a[i]);
  }

  // Reassigns a few random talks without emptying a positive-ratio split.
  void kick(std::uint64_t &rng) {
    for (int k = 0; k < kKickSize; ++k) {
      rng = splitmix64(rng);
      const std::size_t i = rng % assign.size();
      rng = splitmix64(rng);
      const int to = positive[rng % positive.size()];
      const int from = assign[i];
      if (to == from || t.talks[from] <= 1) continue;
      t.add(talks[i], from, -1);
      place(i, to);
    }
  }

  double deficit() const { return t.split_term(0) + t.split_term(1) + t.split_term(2); }

  // Single moves and pair swaps while either lowers the deficit. A move may
  // not empty a positive-ratio split.
  void descend() {
    for (bool improved = true; improved;) {
      improved = false;
      for (std::size_t i : order) {
        const int from = assign[i];
        if (t.talks[from] <= 1) continue;
        for (int to : positive) {
          if (to == from) continue;
          const double before = t.split_term(from) + t.split_term(to);
          t.add(talks[i], from, -1);
          t.add(talks[i], to, +1);
          if (t.split_term(from) + t.split_term(to) < before - 1e-9) {
            assign[i] = to;
            improved = true;
            break;
          }
          t.add(talks[i], to, -1);
          t.add(talks[i], from, +1);
        }
      }
      for (std::size_t a = 0; a < order.size(); ++a)
        for (std::size_t b = a + 1; b < order.size(); ++b) {
          const std::size_t x = order[a], y = order[b];
          const int sx = assign[x], sy = assign[y];
          if (sx == sy || talks[x].labels == talks[y].labels) continue;
          const double before = t.split_term(sx) + t.split_term(sy);
          t.add(talks[x], sx, -1);
          t.add(talks[x], sy, +1);
          t.add(talks[y], sy, -1);
          t.add(talks[y], sx, +1);
          if (t.split_term(sx) + t.split_term(sy) < before - 1e-9) {
            std::swap(assign[x], assign[y]);
            improved = true;
            continue;
          }
          t.add(talks[y], sx, -1);
          t.add(talks[y], sy, +1);
          t.add(talks[x], sy, -1);
          t.add(talks[x], sx, +1);
        }
    }
  }
};

}  // namespace

std::vector<int> assign_talks(const std::vector<TalkLoad> &talks, const SplitSpec &spec) {
  spec.validate();
  if (talks.size() < 3) throw ValidationError("splitting needs at least 3 talks, got " + std::to_string(talks.size()));
  std::vector<int> positive;
  for (int j = 0; j < 3; ++j)
    if (spec.ratios[j] > 0) positive.push_back(j);
  if (talks.size() < positive.size()) throw ValidationError("impossible ratios: more non-empty splits than talks");

  Tally empty{spec.ratios};
  for (const auto &talk : talks) {
    for (int c = 0; c < kLabels; ++c) empty.class_totals[c] += talk.labels[c];
    empty.total += talk.total();
  }

  std::vector<std::size_t> order(talks.size());
  std::iota(order.begin(), order.end(), 0);
  auto key = [&](std::size_t i) { return splitmix64(spec.seed ^ fnv1a64(talks[i].talk_id)); };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (talks[a].total() != talks[b].total()) return talks[a].total() > talks[b].total();
    if (key(a) != key(b)) return key(a) < key(b);
    return talks[a].talk_id < talks[b].talk_id;
  });

  // The greedy solution, polished, competes with polished random restarts;
  // strict improvement is required to replace it.
  Search first{talks, order, positive, empty, std::vector<int>(talks.size(), -1)};
  first.greedy();
  first.descend();
  std::vector<int> best = first.assign;
  double best_deficit = first.deficit();
  std::uint64_t rng = splitmix64(spec.seed ^ 0x73706c6974ull);
  for (int r = 0; r < kRestarts; ++r) {
    Search s{talks, order, positive, empty, std::vector<int>(talks.size(), -1)};
    s.random_start(rng);
    s.descend();
    if (s.deficit() < best_deficit - 1e-9) {
      best_deficit = s.deficit();
      best = s.assign;
    }
  }
  // Iterated local search from the incumbent.
  for (int r = 0; r < kKicks; ++r) {
    Search s{talks, order, positive, empty, std::vector<int>(talks.size(), -1)};
    s.load(best);
    s.kick(rng);
    s.descend();
    if (s.deficit() < best_deficit - 1e-9) {
      best_deficit = s.deficit();
      best = s.assign;
    }
  }
  return best;
}

void split_manifest(DatasetManifest &m, const std::map<std::string, SplitSpec> &per_language) {
  std::map<std::string, std::vector<ManifestEntry *>> by_lang;
  for (auto &e : m.instances) by_lang[e.language].push_back(&e);
  for (auto &[lang, entries] : by_lang) {
    std::vector<ManifestEntry> copy;
    for (auto *e : entries) copy.push_back(*e);
    const auto loads = talk_loads(copy);
    auto it = per_language.find(lang);
    const SplitSpec spec = it != per_language.end() ? it->second : default_split_spec(lang);
    const auto assign = assign_talks(loads, spec);
    std::map<std::string, Split> talk_split;
    for (std::size_t i = 0; i < loads.size(); ++i) talk_split[loads[i].talk_id] = static_cast<Split>(assign[i]);
    for (auto *e : entries) e->split = talk_split.at(e->talk_id);
  }
}

}  // namespace idr::dataset
