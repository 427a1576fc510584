// src/pipeline/fixture.cc

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

#include "idr/pipeline/fixture.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include <nlohmann/json.hpp>

#include "idr/audio/wav.h"
#include "idr/audio/words.h"
#include "idr/base/drop_reason.h"
#include "idr/base/io.h"
#include "idr/corpus/subtitles.h"
#include "idr/segment/context.h"
#include "idr/segment/port.h"

namespace idr::pipeline {

namespace fs = std::filesystem;
using corpus::RelationLabel;

namespace {

enum class Kind { kPlain, kPlanted, kSrcExplicit, kIntensifier, kDurRatio };

struct Row {
  const char *fr;
  const char *en;
  const char *de;
  Kind kind = Kind::kPlain;
  RelationLabel label = RelationLabel::kCauseEffect;
  int sentence = 0;  // anchor of the witness connective
  int clause = 0;
  const char *arg1 = nullptr;  // intra-sentential arguments
  const char *arg2 = nullptr;
  bool dup = false;  // the German side carries the same relation
};

Row plain(const char *fr, const char *en, const char *de) { return {fr, en, de}; }

Row planted(RelationLabel l, int sentence, const char *fr, const char *en, const char *de, bool dup = false) {
  Row r{fr, en, de, Kind::kPlanted, l, sentence};
  r.dup = dup;
  return r;
}

Row intra(RelationLabel l, const char *fr, const char *en, const char *de, const char *a1, const char *a2) {
  Row r{fr, en, de, Kind::kPlanted, l, 0, 1};
  r.arg1 = a1;
  r.arg2 = a2;
  return r;
}

Row distractor(Kind k, const char *fr, const char *en, const char *de) { return {fr, en, de, k}; }

constexpr RelationLabel kCause = RelationLabel::kCauseEffect;
constexpr RelationLabel kContrast = RelationLabel::kContrast;
constexpr RelationLabel kTemporal = RelationLabel::kTemporal;
constexpr RelationLabel kElab = RelationLabel::kElaboration;

const std::vector<std::pair<std::string, std::vector<Row>>> &script() {
  static const std::vector<std::pair<std::string, std::vector<Row>>> talks = {
      {"talk-0001",
       {
           plain("Je voudrais parler de la mer.", "I would like to talk about the sea.",
                 "Ich möchte über das Meer sprechen."),
           plain("Il a plu toute la journée.", "It rained all day.", "Es regnete den ganzen Tag."),
           planted(kCause, 0, "Nous sommes restés à la maison.", "So we stayed at home.",
                   "Deshalb blieben wir zu Hause.", true),
           plain("La mer couvre la planète.", "The sea covers the planet.", "Das Meer bedeckt den Planeten."),
           planted(kCause, 1, "La mer était calme. Nous sommes partis tôt.",
                   "The sea was calm. Therefore we left early.", "Das Meer war ruhig. Wir fuhren früh los."),
           distractor(Kind::kSrcExplicit, "Donc nous avons changé le plan.", "So we changed the plan.",
                      "Wir änderten den Plan."),
           plain("Les poissons vivent partout.", "Fish live everywhere.", "Fische leben überall."),
           planted(kContrast, 0, "Personne ne nous croyait.", "But nobody believed us.", "Niemand glaubte uns."),
           distractor(Kind::kIntensifier, "Il faisait très beau dehors.", "So beautiful outside.",
                      "Es war sehr schön draußen."),
           plain("Nous avons pris un bateau.", "We took a boat.", "Wir nahmen ein Boot."),
           planted(kElab, 0, "Les coraux changent de couleur.", "For example, the corals change colour.",
                   "Die Korallen ändern ihre Farbe."),
           plain("Merci beaucoup.", "Thank you very much.", "Vielen Dank."),
       }},
      {"talk-0002",
       {
           plain("Bonjour à tous.", "Hello everyone.", "Hallo zusammen."),
           intra(kCause, "Il pleuvait, nous sommes restés dedans.", "It was raining, so we stayed inside.",
                 "Es regnete, wir blieben drinnen.", "Il pleuvait", "nous sommes restés dedans."),
           plain("Le vent soufflait fort.", "The wind was blowing hard.", "Der Wind wehte stark."),
           planted(kContrast, 1, "Le projet semblait simple. Il a pris dix ans.",
                   "The project seemed simple. However, it took ten years.",
                   "Das Projekt schien einfach. Es dauerte zehn Jahre."),
           distractor(Kind::kSrcExplicit, "Mais le temps manquait.", "But time was short.", "Die Zeit war knapp."),
           plain("Les enfants regardaient le ciel.", "The children watched the sky.", "Die Kinder sahen den Himmel."),
           planted(kTemporal, 0, "Nous avons analysé les données.", "Then we analysed the data.",
                   "Dann analysierten wir die Daten.", true),
           distractor(Kind::kDurRatio, "Nous avons attendu longtemps sur le quai.", "Then we waited.",
                      "Wir warteten lange am Kai."),
           plain("Le bateau était petit.", "The boat was small.", "Das Boot war klein."),
           planted(kTemporal, 1, "Nous avons collecté les échantillons. Nous les avons envoyés au laboratoire.",
                   "We collected the samples. Afterwards we sent them to the lab.",
                   "Wir sammelten die Proben. Wir schickten sie ins Labor."),
           distractor(Kind::kIntensifier, "Je suis très heureux ici.", "So happy to be here.",
                      "Ich bin sehr glücklich hier."),
           plain("Merci beaucoup.", "Thank you very much.", "Vielen Dank."),
       }},
      {"talk-0003",
       {
           plain("La science avance lentement.", "Science moves slowly.", "Die Wissenschaft kommt langsam voran."),
           planted(kContrast, 0, "Les résultats étaient faibles.", "However, the results were weak.",
                   "Die Ergebnisse waren schwach."),
           plain("Nous avons mesuré la température.", "We measured the temperature.",
                 "Wir haben die Temperatur gemessen."),
           intra(kTemporal, "Le navire est arrivé, nous sommes descendus.", "The ship arrived, then we went ashore.",
                 "Das Schiff kam an, wir gingen an Land.", "Le navire est arrivé", "nous sommes descendus."),
           distractor(Kind::kDurRatio, "Les chercheurs ont publié leurs résultats.", "Therefore they published.",
                      "Die Forscher veröffentlichten ihre Ergebnisse."),
           plain("La mer couvre la planète.", "The sea covers the planet.", "Das Meer bedeckt den Planeten."),
           planted(kElab, 1, "Les océans se réchauffent. La température a monté de deux degrés.",
                   "The oceans are warming. Indeed, the temperature rose by two degrees.",
                   "Die Ozeane erwärmen sich. Die Temperatur stieg um zwei Grad."),
           plain("Nous avons pris un bateau.", "We took a boat.", "Wir nahmen ein Boot."),
           planted(kElab, 0, "Certaines espèces ont disparu.", "Indeed, some species have vanished.",
                   "Einige Arten sind verschwunden."),
           plain("Merci beaucoup.", "Thank you very much.", "Vielen Dank."),
       }},
  };
  return talks;
}

const std::map<std::string, std::string> &lexicon_tables() {
  static const std::map<std::string, std::string> t = {
      {"fr",
       "donc\tcause-effect\tfalse\n"
       "mais\tcontrast\tfalse\n"
       "cependant\tcontrast\tfalse\n"
       "ensuite\ttemporal\tfalse\n"
       "par exemple\telaboration\tfalse\n"},
      {"en",
       "so\tcause-effect\tfalse\n"
       "therefore\tcause-effect\tfalse\n"
       "but\tcontrast\tfalse\n"
       "however\tcontrast\tfalse\n"
       "then\ttemporal\tfalse\n"
       "afterwards\ttemporal\tfalse\n"
       "for example\telaboration\tfalse\n"
       "indeed\telaboration\tfalse\n"
       "since\tcause-effect\ttrue\n"},
      {"de",
       "deshalb\tcause-effect\tfalse\n"
       "aber\tcontrast\tfalse\n"
       "dann\ttemporal\tfalse\n"
       "danach\ttemporal\tfalse\n"
       "zum beispiel\telaboration\tfalse\n"},
  };
  return t;
}

constexpr std::int64_t kLeadMs = 500;
constexpr std::int64_t kWordGapMs = 60;
constexpr std::int64_t kSegmentGapMs = 350;

std::int64_t word_ms(const std::string &w) { return 120 + 30 * static_cast<std::int64_t>(w.size()); }

struct TalkTiming {
  std::vector<corpus::SubtitleSegment> source;
  std::vector<audio::WordTimestamp> words;
  std::int64_t end_ms = 0;
};

TalkTiming lay_out(const std::string &talk_id, const std::vector<Row> &rows) {
  TalkTiming t;
  std::int64_t clock = kLeadMs;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    corpus::SubtitleSegment s;
    s.talk_id = talk_id;
    s.index = static_cast<std::int64_t>(i) + 1;
    s.text = rows[i].fr;
    s.start_ms = clock;
    for (const auto &w : audio::normalize_tokens(s.text)) {
      const std::int64_t end = clock + word_ms(w);
      t.words.push_back({w, static_cast<double>(clock) / 1000.0, static_cast<double>(end) / 1000.0});
      clock = end + kWordGapMs;
    }
    s.end_ms = clock - kWordGapMs;
    t.source.push_back(s);
    clock = s.end_ms + kSegmentGapMs;
  }
  t.end_ms = clock + kLeadMs;
  return t;
}

std::vector<corpus::SubtitleSegment> witness(const TalkTiming &t, const std::vector<Row> &rows, bool english) {
  std::vector<corpus::SubtitleSegment> out = t.source;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out[i].text = english ? rows[i].en : rows[i].de;
    if (english && rows[i].kind == Kind::kDurRatio) {
      // a short witness inside the source segment: ratio 0.4
      const std::int64_t dur = out[i].duration_ms();
      out[i].start_ms += dur * 3 / 10;
      out[i].end_ms = out[i].start_ms + dur * 4 / 10;
    }
  }
  return out;
}

// Harmonic tone per word with short fades; silence between words.
audio::PcmAudio synthesize(const TalkTiming &t) {
  constexpr int kRate = audio::kCanonicalRate;
  std::vector<float> x(static_cast<std::size_t>(t.end_ms * kRate / 1000), 0.0f);
  for (std::size_t k = 0; k < t.words.size(); ++k) {
    const auto &w = t.words[k];
    const double f0 = 110.0 + 20.0 * static_cast<double>(k % 6);
    const double amp = 0.2 + 0.05 * static_cast<double>(k % 3);
    const auto a = static_cast<std::size_t>(std::llround(w.start * kRate));
    const auto b = std::min(x.size(), static_cast<std::size_t>(std::llround(w.end * kRate)));
    const double fade = 0.015 * kRate;
    for (std::size_t n = a; n < b; ++n) {
      const double tt = static_cast<double>(n - a) / kRate;
      const double env = std::min({1.0, static_cast<double>(n - a) / fade, static_cast<double>(b - n) / fade});
      double v = 0;
      for (int h = 1; h <= 3; ++h) v += std::sin(2 * std::numbers::pi * f0 * h * tt) / h;
      x[n] = static_cast<float>(amp * env * v / 1.8);
    }
  }
  audio::PcmAudio pcm;
  pcm.sample_rate = kRate;
  pcm.channels = 1;
  pcm.samples = audio::to_pcm16(x);
  return pcm;
}

}  // namespace

std::map<std::string, corpus::Lexicon> PlantedCorpus::lexicons() const {
  std::map<std::string, corpus::Lexicon> out;
  for (const auto &[lang, tsv] : lexicon_tsv) out.emplace(lang, corpus::Lexicon(lang, corpus::load_lexicon(tsv, lang)));
  return out;
}

PlantedCorpus planted_corpus() {
  PlantedCorpus pc;
  pc.lexicon_tsv = lexicon_tables();
  pc.language_pairs = {{"fr", {"en", "de"}}};
  for (const auto &[talk_id, rows] : script()) {
    const TalkTiming timing = lay_out(talk_id, rows);
    mining::TalkSubtitles ts;
    ts.talk_id = talk_id;
    ts.source_language = "fr";
    ts.source = timing.source;
    ts.translations["en"] = witness(timing, rows, true);
    ts.translations["de"] = witness(timing, rows, false);

    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Row &r = rows[i];
      const std::int64_t index = ts.source[i].index;
      switch (r.kind) {
        case Kind::kPlain:
          break;
        case Kind::kPlanted: {
          PlantedEvent e;
          e.talk_id = talk_id;
          e.source_index = index;
          e.label = r.label;
          e.instance_id = mining::make_instance_id(talk_id, "fr", index, r.label);
          auto ctx = segment::build_context(ts.source, i, {r.sentence, r.clause});
          e.inter_sentential = ctx.inter_sentential;
          e.sentence_index = ctx.sentence_index;
          e.arg1_text = r.arg1 ? r.arg1 : ctx.prev;
          e.arg2_text = r.arg2 ? r.arg2 : ctx.current;
          pc.events.push_back(std::move(e));
          if (r.dup) pc.distractors.push_back({talk_id, index, "en", std::string(drop_code(DropReason::kDup))});
          break;
        }
        case Kind::kSrcExplicit:
          pc.distractors.push_back({talk_id, index, "en", std::string(drop_code(DropReason::kSrcExplicit))});
          break;
        case Kind::kIntensifier:
          pc.distractors.push_back(
              {talk_id, index, "en", std::string(drop_code(DropReason::kNonDiscourseIntensifier))});
          break;
        case Kind::kDurRatio:
          pc.distractors.push_back({talk_id, index, "en", std::string(drop_code(DropReason::kDurRatio))});
          break;
      }
    }
    pc.talks.push_back(std::move(ts));
  }
  return pc;
}

fs::path write_planted_fixture(const fs::path &dir) {
  const PlantedCorpus pc = planted_corpus();
  fs::create_directories(dir / "subtitles");
  fs::create_directories(dir / "asr");
  fs::create_directories(dir / "audio");
  fs::create_directories(dir / "lexicons");

  for (const auto &[lang, tsv] : pc.lexicon_tsv) write_file(dir / "lexicons" / (lang + ".tsv"), tsv);

  nlohmann::json registry = nlohmann::json::array();
  std::string segmenter_rows;
  for (std::size_t t = 0; t < pc.talks.size(); ++t) {
    const auto &ts = pc.talks[t];
    const auto &rows = script()[t].second;
    registry.push_back({{"talk_id", ts.talk_id},
                        {"source_language", "fr"},
                        {"translations", {"de", "en"}},
                        {"audio_path", ts.talk_id + ".wav"}});
    write_file(dir / "subtitles" / (ts.talk_id + ".fr.srt"), corpus::write_srt(ts.source));
    for (const auto &[lang, segs] : ts.translations)
      write_file(dir / "subtitles" / (ts.talk_id + "." + lang + ".srt"), corpus::write_srt(segs));

    const TalkTiming timing = lay_out(ts.talk_id, rows);
    write_file(dir / "asr" / (ts.talk_id + ".words.jsonl"), audio::words_to_jsonl(timing.words));
    audio::write_wav(dir / "audio" / (ts.talk_id + ".wav"), synthesize(timing));

    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].kind != Kind::kPlanted) continue;
      auto ctx = segment::build_context(ts.source, i, {rows[i].sentence, rows[i].clause});
      const auto &e = *std::find_if(pc.events.begin(), pc.events.end(), [&](const PlantedEvent &p) {
        return p.talk_id == ts.talk_id && p.source_index == ts.source[i].index;
      });
      nlohmann::json row = {{"request_hash", segment::request_for(ctx, true).hash()},
                            {"response", segment::SegmenterResponse{e.arg1_text, e.arg2_text}.to_json()}};
      segmenter_rows += row.dump() + "\n";
    }
  }
  write_file(dir / "talks.json", registry.dump(2) + "\n");
  write_file(dir / "segmenter.jsonl", segmenter_rows);

  // Gold: the first inter-sentential event of each label, plus two
  // relations the miner cannot find.
  std::string gold;
  std::set<RelationLabel> seen;
  for (const auto &e : pc.events) {
    if (!e.inter_sentential || !seen.insert(e.label).second) continue;
    gold += nlohmann::json({{"talk_id", e.talk_id},
                            {"sentence_index", e.sentence_index},
                            {"label", std::string(corpus::label_name(e.label))},
                            {"inter_or_intra", "inter"}})
                .dump() +
            "\n";
  }
  gold += R"({"talk_id":"talk-0001","sentence_index":0,"label":"elaboration","inter_or_intra":"inter"})"
          "\n";
  gold += R"({"talk_id":"talk-0003","sentence_index":2,"label":"Expansion.Conjunction","inter_or_intra":"inter"})"
          "\n";
  write_file(dir / "gold.jsonl", gold);

  nlohmann::ordered_json truth;
  truth["events"] = nlohmann::ordered_json::array();
  for (const auto &e : pc.events)
    truth["events"].push_back({{"instance_id", e.instance_id},
                               {"talk_id", e.talk_id},
                               {"source_index", e.source_index},
                               {"label", std::string(corpus::label_name(e.label))},
                               {"inter_sentential", e.inter_sentential},
                               {"sentence_index", e.sentence_index},
                               {"arg1_text", e.arg1_text},
                               {"arg2_text", e.arg2_text}});
  truth["distractors"] = nlohmann::ordered_json::array();
  for (const auto &d : pc.distractors)
    truth["distractors"].push_back({{"talk_id", d.talk_id},
                                    {"source_index", d.source_index},
                                    {"witness_language", d.witness_language},
                                    {"reason", d.reason}});
  write_file(dir / "truth.json", truth.dump(2) + "\n");

  const fs::path config = dir / "idr.toml";
  write_file(config,
             "seed = 13\n"
             "output_dir = \"out\"\n"
             "\n"
             "[corpus]\n"
             "talks = \"talks.json\"\n"
             "subtitles_dir = \"subtitles\"\n"
             "asr_dir = \"asr\"\n"
             "audio_dir = \"audio\"\n"
             "\n"
             "[lexicons]\n"
             "de = \"lexicons/de.tsv\"\n"
             "en = \"lexicons/en.tsv\"\n"
             "fr = \"lexicons/fr.tsv\"\n"
             "\n"
             "[mining]\n"
             "pairs = { fr = [\"en\", \"de\"] }\n"
             "\n"
             "[segmenter]\n"
             "mode = \"fixture\"\n"
             "fixture = \"segmenter.jsonl\"\n"
             "\n"
             "[split.fr]\n"
             "ratios = [0.6, 0.2, 0.2]\n"
             "\n"
             "[train]\n"
             "epochs = 2\n"
             "grad_accum = 1\n"
             "lr_heads = 1e-3\n"
             "\n"
             "[model]\n"
             "kind = \"fusion\"\n"
             "d = 16\n"
             "proj_dim = 16\n"
             "conv_channels = 8\n"
             "\n"
             "[compare]\n"
             "gold = \"gold.jsonl\"\n");
  return config;
}

}  // namespace idr::pipeline
