// src/dataset/stats.cc

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

#include "idr/dataset/stats.h"

#include <cstdio>
#include <set>

namespace idr::dataset {

StatsReport stats_report(const DatasetManifest &m) {
  StatsReport r;
  std::map<std::string, std::array<std::set<std::string>, 4>> split_talks;
  std::map<std::string, std::set<std::string>> all_talks;
  for (const auto &e : m.instances) {
    auto &lang = r.languages[e.language];
    const int c = corpus::label_index(e.label);
    const int s = static_cast<int>(e.split);
    ++lang.total.relations;
    ++lang.total.labels[c];
    ++lang.splits[s].relations;
    ++lang.splits[s].labels[c];
    split_talks[e.language][s].insert(e.talk_id);
    all_talks[e.language].insert(e.talk_id);
  }
  for (auto &[code, lang] : r.languages) {
    lang.total.talks = static_cast<int>(all_talks[code].size());
    for (int s = 0; s < 4; ++s) lang.splits[s].talks = static_cast<int>(split_talks[code][s].size());
  }
  return r;
}

namespace {

nlohmann::ordered_json cell_json(const CellCounts &c) {
  nlohmann::ordered_json j;
  j["relations"] = c.relations;
  j["talks"] = c.talks;
  nlohmann::ordered_json labels;
  for (auto l : corpus::kAllLabels) labels[std::string(corpus::label_name(l))] = c.labels[corpus::label_index(l)];
  j["labels"] = labels;
  return j;
}

}  // namespace

nlohmann::ordered_json StatsReport::to_json() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto &[code, lang] : languages) {
    nlohmann::ordered_json lj;
    lj["total"] = cell_json(lang.total);
    nlohmann::ordered_json splits;
    for (Split s : kAllSplits) splits[std::string(split_name(s))] = cell_json(lang.splits[static_cast<int>(s)]);
    lj["splits"] = splits;
    j[code] = lj;
  }
  return nlohmann::ordered_json{{"languages", j}};
}

std::string StatsReport::to_json_text() const { return to_json().dump(2) + "\n"; }

std::string StatsReport::to_text() const {
  std::string out;
  char buf[256];
  for (const auto &[code, lang] : languages) {
    out += "language " + code + "\n";
    std::snprintf(buf, sizeof buf, "%-12s %9s %6s %12s %9s %9s %11s\n", "split", "relations", "talks",
                  "cause-effect", "contrast", "temporal", "elaboration");
    out += buf;
    auto row = [&](const char *name, const CellCounts &c) {
      std::snprintf(buf, sizeof buf, "%-12s %9d %6d %12d %9d %9d %11d\n", name, c.relations, c.talks, c.labels[0],
                    c.labels[1], c.labels[2], c.labels[3]);
      out += buf;
    };
    for (Split s : kAllSplits) {
      const auto &c = lang.splits[static_cast<int>(s)];
      if (s == Split::kUnassigned && c.relations == 0) continue;
      row(std::string(split_name(s)).c_str(), c);
    }
    row("total", lang.total);
    out += "\n";
  }
  return out;
}

}  // namespace idr::dataset
