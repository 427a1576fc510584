// src/pipeline/config.cc

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

#include "idr/pipeline/config.h"

#include <cmath>
#include <set>

#define TOML_HEADER_ONLY 1
#include <toml.hpp>

#include "idr/base/io.h"
#include "idr/baselines/model.h"

namespace idr::pipeline {

namespace fs = std::filesystem;

namespace {

nlohmann::json to_json(const toml::node &n) {
  if (auto t = n.as_table()) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto &[k, v] : *t) j[std::string(k.str())] = to_json(v);
    return j;
  }
  if (auto a = n.as_array()) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto &v : *a) j.push_back(to_json(v));
    return j;
  }
  if (auto s = n.as_string()) return s->get();
  if (auto i = n.as_integer()) return i->get();
  if (auto f = n.as_floating_point()) return f->get();
  if (auto b = n.as_boolean()) return b->get();
  throw ConfigError("unsupported TOML value (dates and times are not used)");
}

void known_keys(const nlohmann::json &table, std::string_view where, std::set<std::string> allowed) {
  for (const auto &[k, v] : table.items())
    if (!allowed.count(k)) throw ConfigError("unknown key '" + k + "' in " + std::string(where));
}

template <class T>
T get(const nlohmann::json &table, const char *key, T fallback, std::string_view where) {
  if (!table.contains(key)) return fallback;
  try {
    return table[key].get<T>();
  } catch (const nlohmann::json::exception &) {
    throw ConfigError(std::string(where) + "." + key + " has the wrong type");
  }
}

nlohmann::json sub(const nlohmann::json &root, const char *key) {
  if (!root.contains(key)) return nlohmann::json::object();
  if (!root[key].is_object()) throw ConfigError(std::string("[") + key + "] must be a table");
  return root[key];
}

void require_exists(const fs::path &p, std::string_view what) {
  if (p.empty()) throw ConfigError(std::string(what) + " is not set");
  if (!fs::exists(p)) throw ConfigError(std::string(what) + " '" + p.string() + "' does not exist");
}

// Relative to the config directory, so a moved project keeps its fingerprints.
nlohmann::json path_json(const fs::path &p, const fs::path &base) {
  if (p.empty()) return nullptr;
  return p.lexically_relative(base).generic_string();
}

}  // namespace

fs::path PipelineConfig::resolve(const fs::path &p) const {
  if (p.empty() || p.is_absolute()) return p;
  return base_dir / p;
}

PipelineConfig parse_config(std::string_view toml_text, const fs::path &base_dir,
                            std::optional<std::uint64_t> seed) {
  nlohmann::json root;
  try {
    root = to_json(toml::parse(toml_text));
  } catch (const toml::parse_error &e) {
    throw ConfigError("config line " + std::to_string(e.source().begin.line) + ": " + std::string(e.description()));
  }
  known_keys(root, "config", {"seed", "output_dir", "corpus", "lexicons", "mining", "segmenter", "align", "split",
                              "train", "model", "baseline", "compare", "review"});
  PipelineConfig c;
  c.base_dir = base_dir;
  c.seed = get<std::uint64_t>(root, "seed", c.seed, "config");
  if (seed) c.seed = *seed;
  c.output_dir = c.resolve(get<std::string>(root, "output_dir", "out", "config"));

  auto corpus = sub(root, "corpus");
  known_keys(corpus, "[corpus]", {"talks", "subtitles_dir", "asr_dir", "audio_dir"});
  c.talks = c.resolve(get<std::string>(corpus, "talks", "", "corpus"));
  c.subtitles_dir = c.resolve(get<std::string>(corpus, "subtitles_dir", "", "corpus"));
  c.asr_dir = c.resolve(get<std::string>(corpus, "asr_dir", "", "corpus"));
  c.audio_dir = c.resolve(get<std::string>(corpus, "audio_dir", ".", "corpus"));

  const auto lexicons = sub(root, "lexicons");
  for (const auto &[lang, path] : lexicons.items()) {
    if (!path.is_string()) throw ConfigError("lexicons." + lang + " must be a path");
    c.lexicons[lang] = c.resolve(path.get<std::string>());
  }

  auto mining = sub(root, "mining");
  known_keys(mining, "[mining]", {"pairs", "min_ratio", "max_ratio", "min_overlap"});
  const auto pairs = sub(mining, "pairs");
  for (const auto &[src, targets] : pairs.items())
    c.language_pairs[src] = get<std::vector<std::string>>(mining["pairs"], src.c_str(), {}, "mining.pairs");
  c.tolerance.min_ratio = get<double>(mining, "min_ratio", c.tolerance.min_ratio, "mining");
  c.tolerance.max_ratio = get<double>(mining, "max_ratio", c.tolerance.max_ratio, "mining");
  c.tolerance.min_overlap = get<double>(mining, "min_overlap", c.tolerance.min_overlap, "mining");

  auto seg = sub(root, "segmenter");
  known_keys(seg, "[segmenter]",
             {"mode", "fixture", "address", "command", "few_shot", "fallback", "max_in_flight", "timeout_ms"});
  const std::string mode = get<std::string>(seg, "mode", "fallback", "segmenter");
  if (mode == "fallback") c.segmenter.mode = SegmenterMode::kFallback;
  else if (mode == "fixture") c.segmenter.mode = SegmenterMode::kFixture;
  else if (mode == "http") c.segmenter.mode = SegmenterMode::kHttp;
  else if (mode == "command") c.segmenter.mode = SegmenterMode::kCommand;
  else throw ConfigError("segmenter.mode must be fallback, fixture, http or command");
  c.segmenter.fixture = c.resolve(get<std::string>(seg, "fixture", "", "segmenter"));
  c.segmenter.address = get<std::string>(seg, "address", "", "segmenter");
  c.segmenter.command = get<std::vector<std::string>>(seg, "command", {}, "segmenter");
  c.segmenter.few_shot = get<bool>(seg, "few_shot", true, "segmenter");
  c.segmenter.fallback = get<bool>(seg, "fallback", true, "segmenter");
  c.segmenter.max_in_flight = get<int>(seg, "max_in_flight", 4, "segmenter");
  c.segmenter.timeout_ms = get<int>(seg, "timeout_ms", 30000, "segmenter");

  auto align = sub(root, "align");
  known_keys(align, "[align]", {"threshold"});
  c.align_threshold = get<double>(align, "threshold", c.align_threshold, "align");

  const auto splits = sub(root, "split");
  for (const auto &[lang, spec] : splits.items()) {
    if (!spec.is_object()) throw ConfigError("[split." + lang + "] must be a table");
    known_keys(spec, "[split." + lang + "]", {"ratios", "seed"});
    dataset::SplitSpec s = dataset::default_split_spec(lang);
    s.seed = c.seed;
    if (spec.contains("ratios")) {
      auto r = get<std::vector<double>>(spec, "ratios", {}, "split." + lang);
      if (r.size() != 3) throw ConfigError("split." + lang + ".ratios needs train, validation and test");
      s.ratios = {r[0], r[1], r[2]};
    }
    s.seed = get<std::uint64_t>(spec, "seed", s.seed, "split." + lang);
    c.splits[lang] = s;
  }

  auto train = sub(root, "train");
  known_keys(train, "[train]",
             {"lr_backbone", "lr_heads", "lr_stats_head", "weight_decay", "warmup_ratio", "max_grad_norm", "epochs",
              "grad_accum", "lambda_cls", "lambda_lm", "lambda_contr", "patience", "class_weights", "seed"});
  if (!train.contains("seed")) train["seed"] = c.seed;
  c.train = fusion::train_config_from_json(train);

  auto model = sub(root, "model");
  known_keys(model, "[model]",
             {"kind", "d", "proj_dim", "attn_heads", "prosody_heads", "tau", "gamma_init", "alpha", "prosody_dim",
              "num_classes", "mel_bins", "conv_channels", "ln_eps", "ablation"});
  c.model = get<std::string>(model, "kind", c.model, "model");
  model.erase("kind");
  c.fusion = fusion::fusion_config_from_json(model);

  auto baseline = sub(root, "baseline");
  known_keys(baseline, "[baseline]", {"lambda"});
  c.baseline_lambda = get<double>(baseline, "lambda", c.baseline_lambda, "baseline");

  auto compare = sub(root, "compare");
  known_keys(compare, "[compare]", {"gold"});
  c.gold = c.resolve(get<std::string>(compare, "gold", "", "compare"));

  auto review = sub(root, "review");
  known_keys(review, "[review]", {"sample_size", "seed", "verdicts"});
  c.review_sample_size = get<int>(review, "sample_size", c.review_sample_size, "review");
  c.review_seed = get<std::uint64_t>(review, "seed", c.review_seed, "review");
  for (const auto &v : get<std::vector<std::string>>(review, "verdicts", {}, "review"))
    c.verdicts.push_back(c.resolve(v));
  return c;
}

PipelineConfig load_config(const fs::path &path, std::optional<std::uint64_t> seed) {
  if (!fs::exists(path)) throw ConfigError("config file '" + path.string() + "' does not exist");
  return parse_config(read_file(path), fs::absolute(path).parent_path(), seed);
}

void PipelineConfig::validate() const {
  require_exists(talks, "corpus.talks");
  require_exists(subtitles_dir, "corpus.subtitles_dir");
  if (!asr_dir.empty()) require_exists(asr_dir, "corpus.asr_dir");
  require_exists(audio_dir, "corpus.audio_dir");
  for (const auto &[lang, path] : lexicons) require_exists(path, "lexicons." + lang);
  if (language_pairs.empty()) throw ConfigError("mining.pairs is empty");
  for (const auto &[src, targets] : language_pairs) {
    if (!lexicons.count(src)) throw ConfigError("language pair source '" + src + "' has no lexicon");
    if (targets.empty()) throw ConfigError("mining.pairs." + src + " lists no witness languages");
    for (const auto &t : targets) {
      if (!lexicons.count(t)) throw ConfigError("language pair " + src + "->" + t + " has no " + t + " lexicon");
      if (t == src) throw ConfigError("language pair " + src + "->" + t + " maps a language onto itself");
    }
  }
  if (!(tolerance.min_ratio > 0) || !(tolerance.max_ratio >= tolerance.min_ratio))
    throw ConfigError("mining ratios must satisfy 0 < min_ratio <= max_ratio");
  if (!(tolerance.min_overlap >= 0 && tolerance.min_overlap <= 1))
    throw ConfigError("mining.min_overlap must lie in [0, 1]");
  switch (segmenter.mode) {
    case SegmenterMode::kFixture: require_exists(segmenter.fixture, "segmenter.fixture"); break;
    case SegmenterMode::kHttp:
      if (segmenter.address.empty()) throw ConfigError("segmenter.address is not set");
      break;
    case SegmenterMode::kCommand:
      if (segmenter.command.empty()) throw ConfigError("segmenter.command is empty");
      break;
    case SegmenterMode::kFallback:
      if (!segmenter.fallback) throw ConfigError("segmenter mode fallback with fallback = false has no segmenter");
      break;
  }
  if (segmenter.max_in_flight < 1) throw ConfigError("segmenter.max_in_flight must be at least 1");
  if (!(align_threshold >= 0 && align_threshold <= 1)) throw ConfigError("align.threshold must lie in [0, 1]");
  for (const auto &[lang, spec] : splits) {
    try {
      spec.validate();
    } catch (const ValidationError &e) {
      throw ConfigError("split." + lang + ": " + e.what());
    }
  }
  if (model != "fusion") {
    try {
      baselines::parse_baseline(model);
    } catch (const Error &) {
      throw ConfigError("model.kind must be fusion, tfidf, prosodic or prosodic+tfidf, got '" + model + "'");
    }
  }
  try {
    fusion.validate();
    train.validate();
  } catch (const Error &e) {
    throw ConfigError(std::string("model settings: ") + e.what());
  }
  if (!(baseline_lambda >= 0)) throw ConfigError("baseline.lambda must be non-negative");
  if (!gold.empty()) require_exists(gold, "compare.gold");
  if (review_sample_size < 1) throw ConfigError("review.sample_size must be positive");
  for (const auto &v : verdicts) require_exists(v, "review.verdicts entry");
}

nlohmann::json PipelineConfig::section(std::string_view stage) const {
  nlohmann::json j = nlohmann::json::object();
  if (stage == "ingest") {
    j["subtitles_dir"] = path_json(subtitles_dir, base_dir);
  } else if (stage == "mine") {
    j["pairs"] = language_pairs;
    j["tolerance"] = {tolerance.min_ratio, tolerance.max_ratio, tolerance.min_overlap};
  } else if (stage == "segment") {
    j["mode"] = static_cast<int>(segmenter.mode);
    j["address"] = segmenter.address;
    j["command"] = segmenter.command;
    j["few_shot"] = segmenter.few_shot;
    j["fallback"] = segmenter.fallback;
  } else if (stage == "align") {
    j["threshold"] = align_threshold;
  } else if (stage == "split") {
    for (const auto &[lang, s] : splits) j["specs"][lang] = {s.ratios, s.seed};
    j["seed"] = seed;
  } else if (stage == "train") {
    j["model"] = model;
    j["fusion"] = to_json(fusion);
    j["train"] = to_json(train);
    j["baseline_lambda"] = baseline_lambda;
  } else if (stage == "review-export") {
    j["sample_size"] = review_sample_size;
    j["seed"] = review_seed;
  }
  return j;
}

}  // namespace idr::pipeline
