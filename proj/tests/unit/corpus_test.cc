// tests/unit/corpus_test.cc

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

#include <doctest.h>

#include <algorithm>

#include "idr/base/error.h"
#include "idr/corpus/lexicon.h"
#include "idr/corpus/subtitles.h"
#include "idr/corpus/types.h"
#include "support/gen.h"
#include "support/printing.h"

using namespace idr;
using namespace idr::corpus;

TEST_SUITE("corpus") {

TEST_CASE("single SRT block maps fields directly") {
  auto segs = parse_subtitles("1\n00:00:01,000 --> 00:00:03,500\nHello.\n", SubtitleFormat::kSrt, "t1");
  REQUIRE(segs.size() == 1);
  CHECK(segs[0].index == 0);
  CHECK(segs[0].start() == 1.0);
  CHECK(segs[0].end() == 3.5);
  CHECK(segs[0].text == "Hello.");
  CHECK(segs[0].talk_id == "t1");
}

TEST_CASE("empty subtitle file") {
  CHECK(parse_subtitles("", SubtitleFormat::kSrt).empty());
  CHECK(parse_subtitles("[]", SubtitleFormat::kSegmentsJson).empty());
}

TEST_CASE("end before start is a validation error") {
  CHECK_THROWS_AS(parse_subtitles("1\n00:00:05,000 --> 00:00:04,000\nx\n", SubtitleFormat::kSrt),
                  ValidationError);
}

TEST_CASE("malformed timestamp reports its line") {
  try {
    parse_subtitles("1\n00:00:01,000 --> 00:00:02,000\na\n\n2\n00:00:0x,000 --> 00:00:04,000\nb\n",
                    SubtitleFormat::kSrt);
    FAIL("expected parse error");
  } catch (const ParseError &e) {
    CHECK(e.line() == 6);
  }
}

TEST_CASE("SRT with BOM and CRLF, multi-line text") {
  auto segs = parse_subtitles("\xEF\xBB\xBF" "1\r\n00:00:00,500 --> 00:00:01,250\r\nline one\r\nline two\r\n\r\n",
                              SubtitleFormat::kSrt);
  REQUIRE(segs.size() == 1);
  CHECK(segs[0].text == "line one line two");
  CHECK(segs[0].start_ms == 500);
}

TEST_CASE("subtitle round trip property") {
  idr::testing::Gen g(3);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<SubtitleSegment> segs;
    std::int64_t t = g.integer(0, 5000), idx = 0;
    int n = g.integer(0, 12);
    for (int i = 0; i < n; ++i) {
      SubtitleSegment s;
      s.talk_id = "talk";
      idx += g.integer(1, 3);
      s.index = idx;
      s.start_ms = t;
      s.end_ms = t + g.integer(1, 9000);
      t = s.end_ms + g.integer(0, 700);
      int words = g.integer(1, 6);
      for (int w = 0; w < words; ++w) s.text += (w ? " " : "") + g.word();
      segs.push_back(s);
    }
    auto via_srt = parse_subtitles(write_srt(segs), SubtitleFormat::kSrt, "talk");
    auto via_json = parse_subtitles(write_segments_json(segs), SubtitleFormat::kSegmentsJson, "talk");
    CHECK(via_json == segs);
    // SRT numbers blocks but keeps our index as block number - 1
    CHECK(via_srt == segs);
    CHECK(parse_subtitles(write_srt(via_srt), SubtitleFormat::kSrt, "talk") == via_srt);
  }
}

TEST_CASE("srt time formatting") {
  CHECK(format_srt_time(3723004) == "01:02:03,004");
  CHECK(parse_srt_time("01:02:03,004", 1) == 3723004);
  CHECK_THROWS_AS(parse_srt_time("1:2:3", 7), ParseError);
}

TEST_CASE("lexicon rows") {
  auto entries = load_lexicon(
      "therefore\tcause-effect\tfalse\n"
      "and\texpansion\ttrue\n"
      "Por  lo Tanto\tcause-effect\tfalse\n",
      "es");
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].surface == "therefore");
  CHECK(entries[0].sense == RelationLabel::kCauseEffect);
  CHECK(entries[1].surface == "por lo tanto");
  for (const auto &e : entries) CHECK_FALSE(e.ambiguous);
}

TEST_CASE("unknown sense names the row") {
  try {
    load_lexicon("however\tcontrast\tfalse\nbecause\treason\tfalse\n", "en");
    FAIL("expected error");
  } catch (const ParseError &e) {
    CHECK(std::string(e.what()).find("because") != std::string::npos);
    CHECK(e.line() == 2);
  }
}

TEST_CASE("temporal sense variants map to Temporal") {
  CHECK(parse_sense("temporal") == RelationLabel::kTemporal);
  CHECK(parse_sense("temporal-synchronous") == RelationLabel::kTemporal);
  CHECK(parse_sense("Temporal-Sequence") == RelationLabel::kTemporal);
}

TEST_CASE("lexicon property: only unambiguous entries survive") {
  idr::testing::Gen g(5);
  const std::vector<std::string> senses = {"cause-effect", "contrast", "temporal", "elaboration"};
  for (int trial = 0; trial < 40; ++trial) {
    std::string tsv;
    int n = g.integer(0, 15);
    int kept = 0;
    for (int i = 0; i < n; ++i) {
      bool amb = g.coin();
      tsv += g.word() + "\t" + g.pick(senses) + "\t" + (amb ? "true" : "false") + "\n";
      kept += !amb;
    }
    auto entries = load_lexicon(tsv, "en");
    CHECK(static_cast<int>(entries.size()) == kept);
    for (const auto &e : entries) {
      CHECK_FALSE(e.ambiguous);
      CHECK(label_index(e.sense) >= 0);
      CHECK(label_index(e.sense) < kNumLabels);
    }
  }
}

TEST_CASE("lexicon matching is longest-first and order-independent") {
  std::vector<ConnectiveEntry> entries = {
      {"so", "en", RelationLabel::kCauseEffect, false},
      {"so that", "en", RelationLabel::kCauseEffect, false},
      {"even though", "en", RelationLabel::kContrast, false},
      {"then", "en", RelationLabel::kTemporal, false},
  };
  auto toks = tokenize("So that we could eat, even though it rained, then left");
  idr::testing::Gen g(9);
  std::vector<std::string> reference;
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(entries.begin(), entries.end(), g.engine());
    Lexicon lex("en", entries);
    std::vector<std::string> got;
    for (const auto &m : lex.find_all(toks)) got.push_back(m.surface);
    if (trial == 0) reference = got;
    CHECK(got == reference);
  }
  CHECK(reference == std::vector<std::string>{"so that", "even though", "then"});
}

TEST_CASE("one surface with two senses is rejected") {
  std::vector<ConnectiveEntry> entries = {{"since", "en", RelationLabel::kCauseEffect, false},
                                          {"since", "en", RelationLabel::kTemporal, false}};
  CHECK_THROWS_AS(Lexicon("en", entries), ValidationError);
}

TEST_CASE("talk registry invariants") {
  TalkRegistry reg;
  reg.add({"t1", "en", {"fr"}, "a.wav"});
  CHECK_THROWS_AS(reg.add({"t1", "en", {"fr"}, "a.wav"}), ValidationError);
  CHECK_THROWS_AS(reg.add({"t2", "en", {"en"}, "b.wav"}), ValidationError);
  auto back = TalkRegistry::from_json(reg.to_json());
  CHECK(back.size() == 1);
  CHECK(back.at("t1").translations.count("fr") == 1);
}

}  // TEST_SUITE
