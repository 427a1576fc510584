// include/idr/mining/miner.h

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

#ifndef IDR_MINING_MINER_H_
#define IDR_MINING_MINER_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "idr/base/drop_reason.h"
#include "idr/corpus/lexicon.h"
#include "idr/corpus/types.h"
#include "idr/mining/align.h"
#include "idr/mining/detect.h"
#include "idr/mining/types.h"

namespace idr::mining {

// Sense of `connective` in the lexicon. Temporal connectives of every kind
// carry kTemporal. Throws LookupError if absent.
corpus::RelationLabel map_relation(std::string_view connective, const corpus::Lexicon &lexicon);

// Keeps one instance per (talk, source segment, label). The survivor is the
// one whose witness language sorts first; `witnesses` lists all of them.
// Instances of one segment that disagree on the label are all kept and
// marked for review in their trails. Output is sorted by
// (talk, segment, label). Removed duplicates go to `dropped` if given.
std::vector<ImplicitInstance> dedup(const std::vector<ImplicitInstance> &instances,
                                    std::vector<ImplicitInstance> *dropped = nullptr);

// One audit row per candidate pair.
struct MiningRecord {
  std::string talk_id;
  std::string source_language;
  std::string target_language;
  std::int64_t source_index = -1;
  std::int64_t target_index = -1;
  double duration_ratio = 0.0;
  bool emitted = false;
  std::optional<DropReason> reason;
  std::string detail;
  std::string connective;
  std::optional<corpus::RelationLabel> label;
  std::string instance_id;
  FilterTrail trail;
};

nlohmann::json to_json(const MiningRecord &r);

struct MiningResult {
  std::vector<ImplicitInstance> instances;  // after dedup
  std::vector<MiningRecord> records;

  std::size_t candidates() const { return records.size(); }
  std::map<std::string, std::size_t> drop_counts() const;
};

struct TalkSubtitles {
  std::string talk_id;
  std::string source_language;
  std::vector<corpus::SubtitleSegment> source;
  // witness language -> segments
  std::map<std::string, std::vector<corpus::SubtitleSegment>> translations;
};

struct MinerConfig {
  AlignTolerance tolerance;
  // source language -> witness languages to mine against
  std::map<std::string, std::vector<std::string>> language_pairs;
};

// Mines one talk against each configured witness language it has a
// translation for. Returned instances are not deduplicated.
MiningResult mine_talk(const TalkSubtitles &talk,
                       const std::map<std::string, corpus::Lexicon> &lexicons,
                       const MinerConfig &config);

// Mines all talks, then deduplicates across witnesses. Records are ordered
// by (talk, witness language, source index); the emitted record of each
// removed duplicate is turned into a DUP drop.
MiningResult mine_corpus(const std::vector<TalkSubtitles> &talks,
                         const std::map<std::string, corpus::Lexicon> &lexicons,
                         const MinerConfig &config);

}  // namespace idr::mining

#endif  // IDR_MINING_MINER_H_
