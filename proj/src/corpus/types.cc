// src/corpus/types.cc

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

#include "idr/corpus/types.h"

#include "idr/base/error.h"

namespace idr::corpus {

std::string_view label_name(RelationLabel label) {
  switch (label) {
    case RelationLabel::kCauseEffect: return "cause-effect";
    case RelationLabel::kContrast: return "contrast";
    case RelationLabel::kTemporal: return "temporal";
    case RelationLabel::kElaboration: return "elaboration";
  }
  throw ContractError("invalid relation label");
}

RelationLabel parse_label(std::string_view name) {
  for (auto l : kAllLabels)
    if (label_name(l) == name) return l;
  throw LookupError("unknown relation label '" + std::string(name) + "'");
}

RelationLabel label_from_index(int index) {
  if (index < 0 || index >= kNumLabels)
    throw LookupError("relation label index " + std::to_string(index) +
                      " outside 0.." + std::to_string(kNumLabels - 1));
  return static_cast<RelationLabel>(index);
}

void TalkRegistry::add(Talk talk) {
  if (talk.talk_id.empty()) throw ValidationError("talk with empty talk_id");
  if (talks_.count(talk.talk_id))
    throw ValidationError("duplicate talk_id '" + talk.talk_id + "'");
  if (talk.translations.count(talk.source_language))
    throw ValidationError("talk '" + talk.talk_id +
                          "' lists its source language as a translation");
  std::string id = talk.talk_id;
  talks_.emplace(std::move(id), std::move(talk));
}

const Talk &TalkRegistry::at(const std::string &talk_id) const {
  auto it = talks_.find(talk_id);
  if (it == talks_.end()) throw LookupError("unknown talk '" + talk_id + "'");
  return it->second;
}

bool TalkRegistry::contains(const std::string &talk_id) const {
  return talks_.count(talk_id) > 0;
}

TalkRegistry TalkRegistry::from_json(const nlohmann::json &j) {
  if (!j.is_array()) throw ParseError("talk list must be a JSON array");
  TalkRegistry reg;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto &t = j[i];
    try {
      Talk talk;
      talk.talk_id = t.at("talk_id").get<std::string>();
      talk.source_language = t.at("source_language").get<std::string>();
      for (const auto &l : t.at("translations")) talk.translations.insert(l.get<std::string>());
      talk.audio_path = t.value("audio_path", "");
      reg.add(std::move(talk));
    } catch (const nlohmann::json::exception &e) {
      throw ParseError("talk #" + std::to_string(i) + ": " + e.what());
    }
  }
  return reg;
}

nlohmann::json TalkRegistry::to_json() const {
  auto arr = nlohmann::json::array();
  for (const auto &[id, t] : talks_) {
    arr.push_back({{"talk_id", t.talk_id},
                   {"source_language", t.source_language},
                   {"translations", t.translations},
                   {"audio_path", t.audio_path}});
  }
  return arr;
}

nlohmann::json to_json(const SubtitleSegment &s) {
  return {{"talk_id", s.talk_id},
          {"index", s.index},
          {"start_ms", s.start_ms},
          {"end_ms", s.end_ms},
          {"text", s.text}};
}

SubtitleSegment segment_from_json(const nlohmann::json &j) {
  SubtitleSegment s;
  s.talk_id = j.value("talk_id", "");
  s.index = j.at("index").get<std::int64_t>();
  s.start_ms = j.at("start_ms").get<std::int64_t>();
  s.end_ms = j.at("end_ms").get<std::int64_t>();
  s.text = j.at("text").get<std::string>();
  return s;
}

}  // namespace idr::corpus
