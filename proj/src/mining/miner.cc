// src/mining/miner.cc

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

#include "idr/mining/miner.h"

#include <algorithm>
#include <cstdio>
#include <set>
#include <tuple>

#include "idr/base/error.h"
#include "idr/mining/filters.h"

namespace idr::mining {

corpus::RelationLabel map_relation(std::string_view connective, const corpus::Lexicon &lexicon) {
  auto sense = lexicon.sense_of(connective);
  if (!sense)
    throw LookupError("connective '" + std::string(connective) + "' not in " +
                      lexicon.language() + " lexicon");
  return *sense;
}

std::vector<ImplicitInstance> dedup(const std::vector<ImplicitInstance> &instances,
                                    std::vector<ImplicitInstance> *dropped) {
  using Key = std::tuple<std::string, std::int64_t, int>;
  std::map<Key, std::vector<const ImplicitInstance *>> groups;
  for (const auto &inst : instances)
    groups[{inst.talk_id, inst.source_index(), corpus::label_index(inst.label)}].push_back(&inst);

  // labels seen per (talk, segment)
  std::map<std::pair<std::string, std::int64_t>, std::set<int>> labels;
  for (const auto &[key, _] : groups) labels[{std::get<0>(key), std::get<1>(key)}].insert(std::get<2>(key));

  std::vector<ImplicitInstance> out;
  for (auto &[key, members] : groups) {
    std::stable_sort(members.begin(), members.end(), [](const auto *a, const auto *b) {
      return a->witness_language < b->witness_language;
    });
    ImplicitInstance keep = *members.front();
    std::set<std::string> witnesses(keep.witnesses.begin(), keep.witnesses.end());
    for (const auto *m : members) {
      witnesses.insert(m->witness_language);
      witnesses.insert(m->witnesses.begin(), m->witnesses.end());
    }
    keep.witnesses.assign(witnesses.begin(), witnesses.end());
    std::string merged;
    for (const auto &w : keep.witnesses) merged += (merged.empty() ? "" : ",") + w;
    set_step(keep.filter_trail, {"dedup", true, "witnesses: " + merged});

    const auto &seen = labels[{std::get<0>(key), std::get<1>(key)}];
    if (seen.size() > 1) {
      std::string others;
      for (int l : seen) {
        if (l == std::get<2>(key)) continue;
        others += (others.empty() ? "" : ",") + std::string(corpus::label_name(corpus::label_from_index(l)));
      }
      set_step(keep.filter_trail, {"label_consistency", true, "needs_review: segment also labelled " + others});
    }
    if (dropped) {
      for (std::size_t k = 1; k < members.size(); ++k) dropped->push_back(*members[k]);
    }
    out.push_back(std::move(keep));
  }
  return out;
}

nlohmann::json to_json(const MiningRecord &r) {
  auto trail = nlohmann::json::array();
  for (const auto &s : r.trail)
    trail.push_back({{"filter", s.name}, {"pass", s.passed}, {"detail", s.detail}});
  nlohmann::json j = {{"talk_id", r.talk_id},
                      {"source_language", r.source_language},
                      {"target_language", r.target_language},
                      {"source_index", r.source_index},
                      {"target_index", r.target_index},
                      {"duration_ratio", r.duration_ratio},
                      {"outcome", r.emitted ? "emitted" : "dropped"},
                      {"reason", r.reason ? nlohmann::json(drop_code(*r.reason)) : nlohmann::json()},
                      {"detail", r.detail},
                      {"connective", r.connective},
                      {"label", r.label ? nlohmann::json(corpus::label_name(*r.label)) : nlohmann::json()},
                      {"instance_id", r.instance_id},
                      {"filter_trail", trail}};
  return j;
}

std::map<std::string, std::size_t> MiningResult::drop_counts() const {
  std::map<std::string, std::size_t> counts;
  for (const auto &r : records)
    if (!r.emitted && r.reason) ++counts[std::string(drop_code(*r.reason))];
  return counts;
}

MiningResult mine_talk(const TalkSubtitles &talk,
                       const std::map<std::string, corpus::Lexicon> &lexicons,
                       const MinerConfig &config) {
  MiningResult result;
  auto pairs_it = config.language_pairs.find(talk.source_language);
  if (pairs_it == config.language_pairs.end()) return result;
  auto src_lex_it = lexicons.find(talk.source_language);
  if (src_lex_it == lexicons.end())
    throw LookupError("no lexicon loaded for source language " + talk.source_language);
  const corpus::Lexicon &src_lex = src_lex_it->second;

  // position of each source segment, for context indices
  std::map<std::int64_t, std::size_t> position;
  for (std::size_t k = 0; k < talk.source.size(); ++k) position[talk.source[k].index] = k;

  std::vector<std::string> witnesses = pairs_it->second;
  std::sort(witnesses.begin(), witnesses.end());
  for (const auto &lang : witnesses) {
    auto tr = talk.translations.find(lang);
    if (tr == talk.translations.end()) continue;
    auto tgt_lex_it = lexicons.find(lang);
    if (tgt_lex_it == lexicons.end()) throw LookupError("no lexicon loaded for witness language " + lang);
    const corpus::Lexicon &tgt_lex = tgt_lex_it->second;

    std::vector<ExcludedPair> excluded;
    auto pairs = align_segment_pairs(talk.source, tr->second, lang, config.tolerance, &excluded);

    std::vector<MiningRecord> records;
    for (const auto &ex : excluded) {
      MiningRecord r;
      r.talk_id = talk.talk_id;
      r.source_language = talk.source_language;
      r.target_language = lang;
      r.source_index = ex.pair.source_segment.index;
      r.target_index = ex.pair.target_segment.index;
      r.duration_ratio = ex.pair.duration_ratio;
      r.reason = DropReason::kDurRatio;
      r.detail = ex.detail;
      r.trail.push_back({"duration_consistency", false, ex.detail});
      records.push_back(std::move(r));
    }

    for (const auto &pair : pairs) {
      MiningRecord r;
      r.talk_id = talk.talk_id;
      r.source_language = talk.source_language;
      r.target_language = lang;
      r.source_index = pair.source_segment.index;
      r.target_index = pair.target_segment.index;
      r.duration_ratio = pair.duration_ratio;
      char buf[64];
      std::snprintf(buf, sizeof(buf), "ratio %.3f, overlap %.3f", pair.duration_ratio, pair.overlap_fraction);
      r.trail.push_back({"duration_consistency", true, buf});

      Detection det = screen_pair(pair, src_lex, tgt_lex);
      if (!det.hit) {
        switch (*det.reason) {
          case DropReason::kNoConnective:
            r.trail.push_back({"target_screen", false, det.detail});
            break;
          case DropReason::kSrcExplicit:
            r.trail.push_back({"source_screen", false, det.detail});
            break;
          default:
            r.trail.push_back({"source_screen", true, ""});
            r.trail.push_back({"target_screen", false, det.detail});
        }
        r.reason = det.reason;
        r.detail = det.detail;
        records.push_back(std::move(r));
        continue;
      }
      const Explicitation &hit = *det.hit;
      r.connective = hit.connective;
      r.trail.push_back({"source_screen", true, ""});
      r.trail.push_back({"target_screen", true, "'" + hit.connective + "' clause-initial"});

      FilterVerdict fv = apply_discourse_use_filters(hit, pair.target_segment.text, r.trail);
      if (!fv.passed) {
        r.reason = fv.reason;
        r.detail = fv.detail;
        records.push_back(std::move(r));
        continue;
      }

      corpus::RelationLabel label = map_relation(hit.connective, tgt_lex);
      r.trail.push_back({"relation_mapping", true, std::string(corpus::label_name(label))});
      r.label = label;

      ImplicitInstance inst;
      inst.talk_id = talk.talk_id;
      inst.source_language = talk.source_language;
      inst.explicit_connective = hit.connective;
      inst.witness_language = lang;
      inst.label = label;
      inst.instance_id = make_instance_id(talk.talk_id, talk.source_language,
                                          pair.source_segment.index, label);
      std::size_t k = position.at(pair.source_segment.index);
      inst.context_segment_indices = {
          k > 0 ? talk.source[k - 1].index : -1, pair.source_segment.index,
          k + 1 < talk.source.size() ? talk.source[k + 1].index : -1};
      inst.filter_trail = r.trail;
      inst.sentence_ordinal = hit.sentence_ordinal;
      inst.clause_ordinal = hit.clause_ordinal;
      inst.target_segment_index = pair.target_segment.index;
      inst.witnesses = {lang};
      r.emitted = true;
      r.instance_id = inst.instance_id;
      result.instances.push_back(std::move(inst));
      records.push_back(std::move(r));
    }
    std::stable_sort(records.begin(), records.end(),
                     [](const auto &a, const auto &b) { return a.source_index < b.source_index; });
    for (auto &r : records) result.records.push_back(std::move(r));
  }
  return result;
}

MiningResult mine_corpus(const std::vector<TalkSubtitles> &talks,
                         const std::map<std::string, corpus::Lexicon> &lexicons,
                         const MinerConfig &config) {
  std::vector<const TalkSubtitles *> order;
  for (const auto &t : talks) order.push_back(&t);
  std::sort(order.begin(), order.end(),
            [](const auto *a, const auto *b) { return a->talk_id < b->talk_id; });

  MiningResult all;
  std::vector<ImplicitInstance> raw;
  for (const auto *t : order) {
    MiningResult r = mine_talk(*t, lexicons, config);
    for (auto &i : r.instances) raw.push_back(std::move(i));
    for (auto &rec : r.records) all.records.push_back(std::move(rec));
  }

  std::vector<ImplicitInstance> dropped;
  all.instances = dedup(raw, &dropped);

  // DUP rows: the emitted record of each removed duplicate flips to dropped
  for (const auto &d : dropped) {
    for (auto &rec : all.records) {
      if (rec.emitted && rec.talk_id == d.talk_id && rec.source_index == d.source_index() &&
          rec.target_language == d.witness_language && rec.label == d.label) {
        rec.emitted = false;
        rec.reason = DropReason::kDup;
        rec.detail = "duplicate of " + d.instance_id;
        rec.trail.push_back({"dedup", false, rec.detail});
        break;
      }
    }
  }
  for (auto &rec : all.records) {
    if (!rec.emitted) continue;
    for (const auto &inst : all.instances) {
      if (inst.instance_id == rec.instance_id) {
        rec.trail = inst.filter_trail;
        break;
      }
    }
  }
  return all;
}

}  // namespace idr::mining
