// src/dataset/gold.cc

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

#include "idr/dataset/gold.h"

#include <set>

#include "idr/base/error.h"
#include "idr/base/io.h"
#include "idr/corpus/lexicon.h"

namespace idr::dataset {

std::vector<GoldRelation> parse_gold_jsonl(std::string_view body) {
  std::vector<GoldRelation> out;
  std::size_t row = 0;
  for (const auto &j : parse_jsonl(body)) {
    ++row;
    GoldRelation g;
    try {
      g.talk_id = j.at("talk_id").get<std::string>();
      g.sentence_index = j.at("sentence_index").get<std::int64_t>();
      g.label_text = j.value("label", "");
      const std::string kind = j.at("inter_or_intra").get<std::string>();
      if (kind != "inter" && kind != "intra") throw ParseError("inter_or_intra must be inter or intra", row);
      g.inter_sentential = kind == "inter";
    } catch (const nlohmann::json::exception &e) {
      throw ParseError(std::string("gold row: ") + e.what(), row);
    }
    try {
      g.label = corpus::parse_label(g.label_text);
    } catch (const LookupError &) {
      try {
        g.label = corpus::parse_sense(g.label_text);
      } catch (const LookupError &) {
      }
    }
    out.push_back(std::move(g));
  }
  return out;
}

GoldComparison compare_to_gold(const DatasetManifest &ours, const std::vector<GoldRelation> &gold) {
  using Key = std::pair<std::string, std::int64_t>;
  std::map<Key, std::vector<const GoldRelation *>> by_key;
  for (const auto &g : gold) by_key[{g.talk_id, g.sentence_index}].push_back(&g);

  GoldComparison r;
  r.gold_total = static_cast<int>(gold.size());
  r.mined_total = static_cast<int>(ours.instances.size());
  std::set<const GoldRelation *> hit;
  for (const auto &e : ours.instances) {
    auto &w = r.per_witness_language[e.witness_language];
    if (!e.inter_sentential) {
      ++r.intra;
      ++w.intra;
      continue;
    }
    auto it = by_key.find({e.talk_id, e.sentence_index});
    if (it == by_key.end()) {
      ++r.new_inter;
      ++w.new_inter;
      continue;
    }
    ++w.matching;
    for (const auto *g : it->second) {
      hit.insert(g);
      if (g->label) {
        ++r.label_comparable;
        r.label_agreement += *g->label == e.label;
      }
    }
  }
  r.matching = static_cast<int>(hit.size());
  return r;
}

nlohmann::ordered_json GoldComparison::to_json() const {
  nlohmann::ordered_json j;
  j["criterion"] = criterion;
  j["gold_total"] = gold_total;
  j["mined_total"] = mined_total;
  j["matching"] = matching;
  j["new"] = new_inter;
  j["intra"] = intra;
  j["label_comparable"] = label_comparable;
  j["label_agreement"] = label_agreement;
  nlohmann::ordered_json per = nlohmann::ordered_json::object();
  for (const auto &[lang, b] : per_witness_language)
    per[lang.empty() ? "unknown" : lang] = {{"matching", b.matching}, {"new", b.new_inter}, {"intra", b.intra}};
  j["per_witness_language"] = per;
  return j;
}

}  // namespace idr::dataset
