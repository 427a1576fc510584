// include/idr/pipeline/fixture.h

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

#ifndef IDR_PIPELINE_FIXTURE_H_
#define IDR_PIPELINE_FIXTURE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "idr/corpus/lexicon.h"
#include "idr/corpus/types.h"
#include "idr/mining/miner.h"

namespace idr::pipeline {

// A synthetic three-talk corpus (French source, English and German
// witnesses) with known explicitation events and known distractors.
struct PlantedEvent {
  std::string instance_id;
  std::string talk_id;
  std::int64_t source_index = 0;
  corpus::RelationLabel label = corpus::RelationLabel::kCauseEffect;
  bool inter_sentential = true;
  std::int64_t sentence_index = 0;  // talk-level sentence holding Arg2
  std::string arg1_text, arg2_text;
};

struct PlantedDistractor {
  std::string talk_id;
  std::int64_t source_index = 0;
  std::string witness_language;
  std::string reason;  // expected drop code
};

struct PlantedCorpus {
  std::vector<mining::TalkSubtitles> talks;
  std::map<std::string, std::string> lexicon_tsv;  // language -> TSV
  std::map<std::string, std::vector<std::string>> language_pairs;
  std::vector<PlantedEvent> events;
  std::vector<PlantedDistractor> distractors;

  std::map<std::string, corpus::Lexicon> lexicons() const;
};

PlantedCorpus planted_corpus();

// Writes the corpus with synthesized talk audio, ASR word timings, a
// segmenter fixture, a gold relation file, truth.json and idr.toml.
// Returns the config path.
std::filesystem::path write_planted_fixture(const std::filesystem::path &dir);

}  // namespace idr::pipeline

#endif  // IDR_PIPELINE_FIXTURE_H_
