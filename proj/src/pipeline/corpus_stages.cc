// src/pipeline/corpus_stages.cc

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

#include <map>
#include <memory>
#include <set>

#include "idr/audio/clip.h"
#include "idr/audio/wav.h"
#include "idr/audio/words.h"
#include "idr/base/drop_reason.h"
#include "idr/base/io.h"
#include "idr/corpus/lexicon.h"
#include "idr/corpus/subtitles.h"
#include "idr/mining/miner.h"
#include "idr/prosody/cache.h"
#include "idr/prosody/features.h"
#include "idr/prosody/logmel.h"
#include "idr/segment/port.h"
#include "internal.h"

namespace idr::pipeline::detail {

namespace {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

corpus::TalkRegistry load_registry(const fs::path &path) {
  return corpus::TalkRegistry::from_json(json::parse(read_file(path)));
}

std::vector<std::string> talk_languages(const corpus::Talk &t) {
  std::vector<std::string> langs = {t.source_language};
  for (const auto &l : t.translations)
    if (l != t.source_language) langs.push_back(l);
  return langs;
}

fs::path subtitle_source(const PipelineConfig &cfg, const std::string &talk, const std::string &lang,
                         corpus::SubtitleFormat *format) {
  const fs::path srt = cfg.subtitles_dir / (talk + "." + lang + ".srt");
  if (fs::exists(srt)) {
    *format = corpus::SubtitleFormat::kSrt;
    return srt;
  }
  *format = corpus::SubtitleFormat::kSegmentsJson;
  return cfg.subtitles_dir / (talk + "." + lang + ".json");
}

fs::path ingested_subtitles(const StageContext &ctx, const std::string &talk, const std::string &lang) {
  return ctx.of(Stage::kIngest) / "subtitles" / (talk + "." + lang + ".json");
}

std::vector<corpus::SubtitleSegment> load_subtitles(const StageContext &ctx, const std::string &talk,
                                                    const std::string &lang) {
  return corpus::parse_subtitles(read_file(ingested_subtitles(ctx, talk, lang)),
                                 corpus::SubtitleFormat::kSegmentsJson, talk);
}

fs::path ingested_words(const StageContext &ctx, const std::string &talk) {
  return ctx.of(Stage::kIngest) / "words" / (talk + ".words.jsonl");
}

std::vector<json> read_rows(const fs::path &path) { return parse_jsonl(read_file(path)); }

std::string rows_to_jsonl(const std::vector<ojson> &rows) {
  std::string out;
  for (const auto &r : rows) out += r.dump() + "\n";
  return out;
}

void count_drop(ojson &counts, std::string_view code) {
  auto &d = counts["dropped"];
  if (!d.contains(std::string(code))) d[std::string(code)] = 0;
  d[std::string(code)] = d[std::string(code)].get<int>() + 1;
}

std::unique_ptr<segment::SegmenterPort> make_port(const SegmenterSettings &s) {
  switch (s.mode) {
    case SegmenterMode::kFixture: return std::make_unique<segment::FixtureSegmenter>(s.fixture);
    case SegmenterMode::kHttp: return std::make_unique<segment::HttpSegmenter>(s.address, s.timeout_ms);
    case SegmenterMode::kCommand: return std::make_unique<segment::SubprocessSegmenter>(s.command, s.timeout_ms);
    case SegmenterMode::kFallback: return nullptr;
  }
  return nullptr;
}

ojson words_json(const std::vector<audio::WordTimestamp> &words, std::size_t first, std::size_t last) {
  ojson a = ojson::array();
  for (std::size_t i = first; i <= last; ++i) a.push_back({words[i].word, words[i].start, words[i].end});
  return a;
}

audio::PcmAudio pcm_of(const audio::AudioClip &clip) {
  audio::PcmAudio pcm;
  pcm.sample_rate = clip.sample_rate;
  pcm.channels = 1;
  pcm.samples = audio::to_pcm16(clip.samples);
  return pcm;
}

}  // namespace

std::vector<fs::path> external_inputs(Stage s, const PipelineConfig &cfg) {
  std::vector<fs::path> out;
  auto tree = [&](const fs::path &dir) {
    if (dir.empty() || !fs::exists(dir)) return;
    std::vector<fs::path> files;
    for (const auto &e : fs::recursive_directory_iterator(dir))
      if (e.is_regular_file()) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    out.insert(out.end(), files.begin(), files.end());
  };
  switch (s) {
    case Stage::kIngest:
      out.push_back(cfg.talks);
      tree(cfg.subtitles_dir);
      tree(cfg.asr_dir);
      if (fs::exists(cfg.talks)) {
        const auto registry = load_registry(cfg.talks);
        for (const auto &[id, t] : registry.talks()) out.push_back(cfg.audio_dir / t.audio_path);
      }
      break;
    case Stage::kMine:
      for (const auto &[lang, p] : cfg.lexicons) out.push_back(p);
      break;
    case Stage::kSegment:
      if (cfg.segmenter.mode == SegmenterMode::kFixture) out.push_back(cfg.segmenter.fixture);
      break;
    case Stage::kCompare:
      if (!cfg.gold.empty()) out.push_back(cfg.gold);
      break;
    case Stage::kReviewImport:
      out.insert(out.end(), cfg.verdicts.begin(), cfg.verdicts.end());
      break;
    default:
      break;
  }
  return out;
}

void run_ingest(StageContext &ctx) {
  const auto &cfg = ctx.cfg;
  auto registry = load_registry(cfg.talks);
  std::vector<corpus::Talk> talks;
  for (const auto &[id, t] : registry.talks()) talks.push_back(t);

  fs::create_directories(ctx.dir / "subtitles");
  fs::create_directories(ctx.dir / "audio");
  fs::create_directories(ctx.dir / "words");
  std::vector<std::map<std::string, int>> seg_counts(talks.size());
  std::vector<double> seconds(talks.size());
  std::vector<int> has_words(talks.size());
  parallel_for(talks.size(), [&](std::size_t i) {
    const auto &t = talks[i];
    for (const auto &lang : talk_languages(t)) {
      corpus::SubtitleFormat fmt;
      const fs::path src = subtitle_source(cfg, t.talk_id, lang, &fmt);
      if (!fs::exists(src))
        throw ValidationError("talk " + t.talk_id + ": no " + lang + " subtitles (" + src.string() + ")");
      auto segs = corpus::parse_subtitles(read_file(src), fmt, t.talk_id);
      write_file(ingested_subtitles(ctx, t.talk_id, lang), corpus::write_segments_json(segs));
      seg_counts[i][lang] = static_cast<int>(segs.size());
    }
    auto pcm = audio::ingest_audio(audio::read_wav(cfg.audio_dir / t.audio_path));
    audio::write_wav(ctx.dir / "audio" / (t.talk_id + ".wav"), pcm);
    seconds[i] = pcm.duration();
    const fs::path words = cfg.asr_dir / (t.talk_id + ".words.jsonl");
    if (!cfg.asr_dir.empty() && fs::exists(words)) {
      write_file(ingested_words(ctx, t.talk_id), audio::words_to_jsonl(audio::load_words(words)));
      has_words[i] = 1;
    }
  });

  corpus::TalkRegistry out;
  std::map<std::string, int> segments;
  int without_words = 0;
  double total_seconds = 0;
  for (std::size_t i = 0; i < talks.size(); ++i) {
    corpus::Talk t = talks[i];
    t.audio_path = "audio/" + t.talk_id + ".wav";
    out.add(t);
    for (const auto &[lang, n] : seg_counts[i]) segments[lang] += n;
    without_words += !has_words[i];
    total_seconds += seconds[i];
  }
  write_file(ctx.dir / "talks.json", out.to_json().dump(2) + "\n");
  ctx.counts["talks"] = talks.size();
  ctx.counts["segments"] = segments;
  ctx.counts["audio_seconds"] = total_seconds;
  ctx.counts["talks_without_words"] = without_words;
}

void run_mine(StageContext &ctx) {
  const auto &cfg = ctx.cfg;
  auto registry = load_registry(ctx.of(Stage::kIngest) / "talks.json");
  std::map<std::string, corpus::Lexicon> lexicons;
  for (const auto &[lang, path] : cfg.lexicons)
    lexicons.emplace(lang, corpus::Lexicon(lang, corpus::load_lexicon(read_file(path), lang)));

  std::vector<mining::TalkSubtitles> talks;
  for (const auto &[id, t] : registry.talks()) {
    mining::TalkSubtitles ts;
    ts.talk_id = id;
    ts.source_language = t.source_language;
    ts.source = load_subtitles(ctx, id, t.source_language);
    for (const auto &lang : t.translations)
      if (lang != t.source_language) ts.translations[lang] = load_subtitles(ctx, id, lang);
    talks.push_back(std::move(ts));
  }
  mining::MinerConfig mc;
  mc.tolerance = cfg.tolerance;
  mc.language_pairs = cfg.language_pairs;
  auto result = mining::mine_corpus(talks, lexicons, mc);

  std::vector<json> inst_rows, record_rows;
  for (const auto &i : result.instances) inst_rows.push_back(mining::to_json(i));
  for (const auto &r : result.records) record_rows.push_back(mining::to_json(r));
  write_file(ctx.dir / "instances.jsonl", to_jsonl(inst_rows));
  write_file(ctx.dir / "records.jsonl", to_jsonl(record_rows));

  const auto candidates = result.candidates();
  ctx.counts["candidates"] = candidates;
  ctx.counts["emitted"] = result.instances.size();
  ctx.counts["dropped_by_filter"] = candidates - result.instances.size();
  ctx.counts["dropped"] = result.drop_counts();
}

void run_segment(StageContext &ctx) {
  const auto &cfg = ctx.cfg;
  std::vector<mining::ImplicitInstance> instances;
  for (const auto &row : read_rows(ctx.of(Stage::kMine) / "instances.jsonl"))
    instances.push_back(mining::instance_from_json(row));

  std::map<std::string, std::vector<corpus::SubtitleSegment>> talk_segments;
  std::vector<segment::SegmentJob> jobs;
  std::vector<ojson> dropped;
  ctx.counts["in"] = instances.size();
  ctx.counts["dropped"] = ojson::object();
  for (const auto &inst : instances) {
    auto it = talk_segments.find(inst.talk_id);
    if (it == talk_segments.end())
      it = talk_segments.emplace(inst.talk_id, load_subtitles(ctx, inst.talk_id, inst.source_language)).first;
    const auto &segs = it->second;
    auto pos = std::find_if(segs.begin(), segs.end(),
                            [&](const corpus::SubtitleSegment &s) { return s.index == inst.source_index(); });
    if (pos == segs.end()) {
      dropped.push_back({{"instance_id", inst.instance_id}, {"reason", drop_code(DropReason::kSegInvalid)},
                         {"detail", "source segment missing"}});
      count_drop(ctx.counts, drop_code(DropReason::kSegInvalid));
      continue;
    }
    segment::RelationAnchor anchor{inst.sentence_ordinal, inst.clause_ordinal};
    jobs.push_back({inst.instance_id, segment::build_context(segs, static_cast<std::size_t>(pos - segs.begin()), anchor)});
  }

  auto port = make_port(cfg.segmenter);
  segment::SegmentOptions opts{cfg.segmenter.few_shot, cfg.segmenter.fallback};
  auto results = segment::segment_all(jobs, port.get(), opts, static_cast<std::size_t>(cfg.segmenter.max_in_flight));

  std::vector<ojson> rows;
  int external = 0, fallback = 0;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    const auto &job = jobs[k];
    const auto &out = results[k].outcome;
    if (!out.spans) {
      dropped.push_back({{"instance_id", job.instance_id}, {"reason", drop_code(DropReason::kSegInvalid)},
                         {"detail", out.reason}});
      count_drop(ctx.counts, drop_code(DropReason::kSegInvalid));
      continue;
    }
    const auto &sp = *out.spans;
    (sp.source == segment::SpanSource::kExternal ? external : fallback)++;
    const std::string &text = job.ctx.text;
    ojson r;
    r["instance_id"] = job.instance_id;
    r["talk_id"] = job.ctx.talk_id;
    r["sentence_index"] = job.ctx.sentence_index;
    r["inter_sentential"] = job.ctx.inter_sentential;
    r["segment_indices"] = job.ctx.segment_indices;
    r["context"] = text;
    r["arg1"] = {{"begin", sp.arg1.begin}, {"end", sp.arg1.end}, {"text", text.substr(sp.arg1.begin, sp.arg1.size())}};
    r["arg2"] = {{"begin", sp.arg2.begin}, {"end", sp.arg2.end}, {"text", text.substr(sp.arg2.begin, sp.arg2.size())}};
    r["span_source"] = std::string(segment::span_source_name(sp.source));
    r["external_error"] = out.external_error;
    rows.push_back(std::move(r));
  }
  write_file(ctx.dir / "segments.jsonl", rows_to_jsonl(rows));
  write_file(ctx.dir / "dropped.jsonl", rows_to_jsonl(dropped));
  ctx.counts["out"] = rows.size();
  ctx.counts["external"] = external;
  ctx.counts["fallback"] = fallback;
}

void run_align(StageContext &ctx) {
  const auto &cfg = ctx.cfg;
  auto registry = load_registry(ctx.of(Stage::kIngest) / "talks.json");
  std::map<std::string, std::vector<json>> by_talk;
  auto rows = read_rows(ctx.of(Stage::kSegment) / "segments.jsonl");
  for (auto &r : rows) by_talk[r["talk_id"].get<std::string>()].push_back(r);
  std::vector<std::string> talk_ids;
  for (const auto &[id, _] : by_talk) talk_ids.push_back(id);

  fs::create_directories(ctx.dir / "clips");
  std::vector<std::vector<ojson>> kept(talk_ids.size()), dropped(talk_ids.size());
  parallel_for(talk_ids.size(), [&](std::size_t ti) {
    const std::string &talk = talk_ids[ti];
    const auto &t = registry.at(talk);
    auto drop = [&](const json &row, std::string detail) {
      dropped[ti].push_back({{"instance_id", row["instance_id"].get<std::string>()},
                             {"reason", drop_code(DropReason::kUnalignable)},
                             {"detail", std::move(detail)}});
    };
    if (!fs::exists(ingested_words(ctx, talk))) {
      for (const auto &row : by_talk[talk]) drop(row, "no word timestamps for talk " + talk);
      return;
    }
    const auto words = audio::load_words(ingested_words(ctx, talk));
    const auto segs = load_subtitles(ctx, talk, t.source_language);
    const auto whole = audio::whole_clip(audio::read_wav(ctx.of(Stage::kIngest) / t.audio_path), talk);

    for (const auto &row : by_talk[talk]) {
      // Restrict the search to words inside the context's subtitle segments.
      std::set<std::int64_t> covered;
      for (const auto &v : row["segment_indices"]) covered.insert(v.get<std::int64_t>());
      double lo = 1e300, hi = -1e300;
      for (const auto &s : segs)
        if (covered.count(s.index)) {
          lo = std::min(lo, s.start());
          hi = std::max(hi, s.end());
        }
      std::size_t first = words.size(), last = 0;
      for (std::size_t w = 0; w < words.size(); ++w)
        if (words[w].end > lo && words[w].start < hi) {
          first = std::min(first, w);
          last = w;
        }
      if (first >= words.size()) {
        drop(row, "no words inside the context window");
        continue;
      }
      const std::vector<audio::WordTimestamp> window(words.begin() + static_cast<std::ptrdiff_t>(first),
                                                     words.begin() + static_cast<std::ptrdiff_t>(last) + 1);
      ojson out;
      out["instance_id"] = row["instance_id"];
      out["talk_id"] = talk;
      try {
        for (const char *arg : {"arg1", "arg2"}) {
          auto a = audio::align_span_to_time(row[arg]["text"].get<std::string>(), window, cfg.align_threshold);
          auto clip = audio::cut_audio(whole, a.span);
          const std::string id = row["instance_id"].get<std::string>();
          const std::string rel = "clips/" + id + "." + arg + ".wav";
          audio::write_wav(ctx.dir / rel, pcm_of(clip));
          auto anomaly = audio::energy_anomaly(clip);
          out[arg] = {{"start", a.span.start},
                      {"end", a.span.end},
                      {"first_word", first + a.first},
                      {"last_word", first + a.last},
                      {"distance", a.distance},
                      {"clip", rel},
                      {"energy_flag", anomaly ? ojson(*anomaly) : ojson(nullptr)}};
        }
      } catch (const audio::UnalignableError &e) {
        drop(row, e.what());
        continue;
      } catch (const RangeError &e) {
        drop(row, e.what());
        continue;
      }
      kept[ti].push_back(std::move(out));
    }
  });

  std::vector<ojson> rows_out, drops_out;
  for (std::size_t i = 0; i < talk_ids.size(); ++i) {
    rows_out.insert(rows_out.end(), kept[i].begin(), kept[i].end());
    drops_out.insert(drops_out.end(), dropped[i].begin(), dropped[i].end());
  }
  // clips of dropped instances are not kept
  for (const auto &d : drops_out)
    for (const char *arg : {"arg1", "arg2"})
      fs::remove(ctx.dir / "clips" / (d["instance_id"].get<std::string>() + "." + arg + ".wav"));
  write_file(ctx.dir / "aligned.jsonl", rows_to_jsonl(rows_out));
  write_file(ctx.dir / "dropped.jsonl", rows_to_jsonl(drops_out));
  ctx.counts["in"] = rows.size();
  ctx.counts["out"] = rows_out.size();
  ctx.counts["dropped"] = ojson::object();
  if (!drops_out.empty()) ctx.counts["dropped"][std::string(drop_code(DropReason::kUnalignable))] = drops_out.size();
}

void run_prosody(StageContext &ctx) {
  auto rows = read_rows(ctx.of(Stage::kAlign) / "aligned.jsonl");
  std::map<std::string, std::vector<const json *>> by_talk;
  for (const auto &r : rows) by_talk[r["talk_id"].get<std::string>()].push_back(&r);
  std::vector<std::string> talk_ids;
  for (const auto &[id, _] : by_talk) talk_ids.push_back(id);

  const fs::path feat_dir = ctx.dir / "features";
  fs::create_directories(feat_dir);
  std::vector<std::vector<ojson>> out(talk_ids.size());
  std::vector<int> word_counts(talk_ids.size());
  parallel_for(talk_ids.size(), [&](std::size_t ti) {
    const std::string &talk = talk_ids[ti];
    const auto words = audio::load_words(ingested_words(ctx, talk));
    struct Arg {
      const json *row;
      std::string name;
      audio::AudioClip clip;
      std::vector<audio::WordTimestamp> words;
      prosody::ProsodyMatrix raw;
    };
    std::vector<Arg> args;
    prosody::TalkNormalizer norm;
    for (const json *row : by_talk[talk]) {
      for (const char *name : {"arg1", "arg2"}) {
        const auto &a = (*row)[name];
        const std::size_t first = a["first_word"].get<std::size_t>(), last = a["last_word"].get<std::size_t>();
        Arg arg{row, name, {}, {words.begin() + static_cast<std::ptrdiff_t>(first),
                                words.begin() + static_cast<std::ptrdiff_t>(last) + 1}, {}};
        const auto pcm = audio::read_wav(ctx.of(Stage::kAlign) / a["clip"].get<std::string>());
        arg.clip.samples = audio::to_mono_float(pcm);
        arg.clip.sample_rate = pcm.sample_rate;
        arg.clip.talk_id = talk;
        arg.clip.origin = {a["start"].get<double>(), a["end"].get<double>()};
        prosody::WordNeighbours nb;
        if (first > 0) nb.prev_end = words[first - 1].end;
        if (last + 1 < words.size()) nb.next_start = words[last + 1].start;
        arg.raw = prosody::extract_prosody_raw(arg.clip, arg.words, nb);
        norm.accumulate(arg.raw.rows);
        word_counts[ti] += static_cast<int>(arg.words.size());
        args.push_back(std::move(arg));
      }
    }
    std::map<std::string, ojson> rows_by_id;
    for (auto &arg : args) {
      const std::string id = (*arg.row)["instance_id"].get<std::string>();
      const fs::path pros = prosody::feature_cache_path(feat_dir, id, arg.name + ".prosody", prosody::kProsodyFeatureVersion);
      const fs::path mel = prosody::feature_cache_path(feat_dir, id, arg.name + ".logmel", prosody::kLogMelFeatureVersion);
      prosody::save_features(pros, norm.apply(arg.raw.rows));
      prosody::save_features(mel, prosody::compute_logmel(arg.clip).frames);
      auto &r = rows_by_id[id];
      r["instance_id"] = id;
      r[arg.name] = {{"prosody", fs::relative(pros, ctx.dir).generic_string()},
                     {"logmel", fs::relative(mel, ctx.dir).generic_string()},
                     {"words", words_json(arg.words, 0, arg.words.size() - 1)}};
    }
    for (auto &[id, r] : rows_by_id) out[ti].push_back(std::move(r));
  });

  std::vector<ojson> all;
  int total_words = 0;
  for (std::size_t i = 0; i < talk_ids.size(); ++i) {
    all.insert(all.end(), out[i].begin(), out[i].end());
    total_words += word_counts[i];
  }
  write_file(ctx.dir / "features.jsonl", rows_to_jsonl(all));
  ctx.counts["instances"] = all.size();
  ctx.counts["talks"] = talk_ids.size();
  ctx.counts["words"] = total_words;
}

}  // namespace idr::pipeline::detail
