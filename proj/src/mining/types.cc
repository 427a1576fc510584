// src/mining/types.cc

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

#include "idr/mining/types.h"

#include <algorithm>
#include <cstdio>

namespace idr::mining {

void set_step(FilterTrail &trail, FilterStep step) {
  for (auto &s : trail) {
    if (s.name == step.name) {
      s = std::move(step);
      return;
    }
  }
  trail.push_back(std::move(step));
}

bool all_passed(const FilterTrail &trail) {
  return std::all_of(trail.begin(), trail.end(), [](const FilterStep &s) { return s.passed; });
}

std::string make_instance_id(std::string_view talk_id, std::string_view source_language,
                             std::int64_t source_index, corpus::RelationLabel label) {
  char idx[32];
  std::snprintf(idx, sizeof(idx), "s%05lld", static_cast<long long>(source_index));
  std::string id(talk_id);
  id += '-';
  id += source_language;
  id += '-';
  id += idx;
  id += '-';
  id += corpus::label_name(label);
  return id;
}

nlohmann::json to_json(const ImplicitInstance &inst) {
  auto trail = nlohmann::json::array();
  for (const auto &s : inst.filter_trail)
    trail.push_back({{"filter", s.name}, {"pass", s.passed}, {"detail", s.detail}});
  return {{"instance_id", inst.instance_id},
          {"talk_id", inst.talk_id},
          {"source_language", inst.source_language},
          {"explicit_connective", inst.explicit_connective},
          {"witness_language", inst.witness_language},
          {"label", corpus::label_name(inst.label)},
          {"context_segment_indices", inst.context_segment_indices},
          {"filter_trail", trail},
          {"sentence_ordinal", inst.sentence_ordinal},
          {"clause_ordinal", inst.clause_ordinal},
          {"target_segment_index", inst.target_segment_index},
          {"witnesses", inst.witnesses}};
}

ImplicitInstance instance_from_json(const nlohmann::json &j) {
  ImplicitInstance inst;
  inst.instance_id = j.at("instance_id").get<std::string>();
  inst.talk_id = j.at("talk_id").get<std::string>();
  inst.source_language = j.at("source_language").get<std::string>();
  inst.explicit_connective = j.at("explicit_connective").get<std::string>();
  inst.witness_language = j.at("witness_language").get<std::string>();
  inst.label = corpus::parse_label(j.at("label").get<std::string>());
  inst.context_segment_indices = j.at("context_segment_indices").get<std::array<std::int64_t, 3>>();
  for (const auto &s : j.at("filter_trail"))
    inst.filter_trail.push_back({s.at("filter").get<std::string>(), s.at("pass").get<bool>(),
                                 s.value("detail", "")});
  inst.sentence_ordinal = j.value("sentence_ordinal", 0);
  inst.clause_ordinal = j.value("clause_ordinal", 0);
  inst.target_segment_index = j.value("target_segment_index", std::int64_t{-1});
  inst.witnesses = j.value("witnesses", std::vector<std::string>{});
  return inst;
}

}  // namespace idr::mining
