// src/pipeline/dataset_stages.cc

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
#include <set>

#include "idr/base/container.h"
#include "idr/base/hash.h"
#include "idr/base/io.h"
#include "idr/baselines/model.h"
#include "idr/dataset/gold.h"
#include "idr/dataset/manifest.h"
#include "idr/dataset/metrics.h"
#include "idr/dataset/split.h"
#include "idr/dataset/stats.h"
#include "idr/fusion/backbone.h"
#include "idr/fusion/model.h"
#include "idr/fusion/params.h"
#include "idr/fusion/trainer.h"
#include "idr/mining/types.h"
#include "idr/prosody/cache.h"
#include "idr/review/verdicts.h"
#include "internal.h"

namespace idr::pipeline::detail {

namespace {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

std::map<std::string, json> rows_by_id(const fs::path &path) {
  std::map<std::string, json> out;
  for (auto &r : parse_jsonl(read_file(path))) out[r["instance_id"].get<std::string>()] = r;
  return out;
}

std::string rows_to_jsonl(const std::vector<ojson> &rows) {
  std::string out;
  for (const auto &r : rows) out += r.dump() + "\n";
  return out;
}

// Everything a model needs for one manifest entry.
struct Example {
  const dataset::ManifestEntry *entry = nullptr;
  prosody::ProsodyMatrix prosody1, prosody2;
  prosody::LogMel audio1, audio2;
};

prosody::ProsodyMatrix load_prosody(const fs::path &dir, const json &arg) {
  prosody::ProsodyMatrix p;
  p.rows = prosody::load_features(dir / arg["prosody"].get<std::string>());
  for (const auto &w : arg["words"]) p.word_refs.push_back({w[0].get<std::string>(), w[1].get<double>(), w[2].get<double>()});
  return p;
}

prosody::LogMel load_logmel(const fs::path &dir, const json &arg) {
  prosody::LogMel m;
  m.frames = prosody::load_features(dir / arg["logmel"].get<std::string>());
  m.mask.assign(static_cast<std::size_t>(m.frames.cols()), 1);
  return m;
}

std::vector<Example> load_examples(const StageContext &ctx, const dataset::DatasetManifest &m, dataset::Split split) {
  const fs::path pdir = ctx.of(Stage::kProsody);
  auto features = rows_by_id(pdir / "features.jsonl");
  std::vector<Example> out;
  for (const auto &e : m.instances) {
    if (e.split != split) continue;
    auto it = features.find(e.instance_id);
    if (it == features.end()) throw LookupError("no prosody features for " + e.instance_id);
    Example ex;
    ex.entry = &e;
    ex.prosody1 = load_prosody(pdir, it->second["arg1"]);
    ex.prosody2 = load_prosody(pdir, it->second["arg2"]);
    ex.audio1 = load_logmel(pdir, it->second["arg1"]);
    ex.audio2 = load_logmel(pdir, it->second["arg2"]);
    out.push_back(std::move(ex));
  }
  return out;
}

std::vector<fusion::EncodedExample> encode_all(const PipelineConfig &cfg, const fusion::FusionConfig &fc,
                                               const std::vector<Example> &xs) {
  fusion::StubBackbone backbone(fc.d);
  std::vector<fusion::EncodedExample> out(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    const auto &x = xs[i];
    fusion::FusionExample fe;
    fe.id = x.entry->instance_id;
    fe.arg1_text = x.entry->arg1_text;
    fe.arg2_text = x.entry->arg2_text;
    fe.prosody1 = x.prosody1.rows;
    fe.prosody2 = x.prosody2.rows;
    fe.audio1 = x.audio1;
    fe.audio2 = x.audio2;
    fe.label = corpus::label_index(x.entry->label);
    out[i] = fusion::encode(backbone, fe, fc.ablation);
  });
  (void)cfg;
  return out;
}

std::vector<baselines::BaselineInput> baseline_inputs(const std::vector<Example> &xs) {
  std::vector<baselines::BaselineInput> out;
  for (const auto &x : xs)
    out.push_back({x.entry->arg1_text, x.entry->arg2_text, x.prosody1, x.prosody2, corpus::label_index(x.entry->label)});
  return out;
}

std::vector<int> labels_of(const std::vector<Example> &xs) {
  std::vector<int> out;
  for (const auto &x : xs) out.push_back(corpus::label_index(x.entry->label));
  return out;
}

std::map<std::string, dataset::SplitSpec> split_specs(const PipelineConfig &cfg, const dataset::DatasetManifest &m) {
  std::map<std::string, dataset::SplitSpec> specs = cfg.splits;
  for (const auto &e : m.instances)
    if (!specs.count(e.language)) {
      auto s = dataset::default_split_spec(e.language);
      s.seed = cfg.seed;
      specs[e.language] = s;
    }
  return specs;
}

void save_manifest(const dataset::DatasetManifest &m, const fs::path &path) {
  m.save(path);
  dataset::check_clips(m, path.parent_path());
}

std::vector<int> predict_with(const StageContext &ctx, const Container &model, const std::vector<Example> &xs) {
  if (model.kind == "fusion") {
    auto [fc, params] = fusion::from_container(model);
    auto enc = encode_all(ctx.cfg, fc, xs);
    std::vector<int> out(enc.size());
    parallel_for(enc.size(), [&, &fc = fc, &params = params](std::size_t i) { out[i] = fusion::predict(fc, params, enc[i]); });
    return out;
  }
  return baselines::BaselineModel::from_container(model).predict(baseline_inputs(xs));
}

}  // namespace

void run_assemble(StageContext &ctx) {
  std::vector<mining::ImplicitInstance> instances;
  for (const auto &row : parse_jsonl(read_file(ctx.of(Stage::kMine) / "instances.jsonl")))
    instances.push_back(mining::instance_from_json(row));
  auto segments = rows_by_id(ctx.of(Stage::kSegment) / "segments.jsonl");
  auto aligned = rows_by_id(ctx.of(Stage::kAlign) / "aligned.jsonl");
  auto features = rows_by_id(ctx.of(Stage::kProsody) / "features.jsonl");

  dataset::DatasetManifest m;
  int no_segment = 0, no_audio = 0;
  for (const auto &inst : instances) {
    auto s = segments.find(inst.instance_id);
    if (s == segments.end()) {
      ++no_segment;
      continue;
    }
    auto a = aligned.find(inst.instance_id);
    if (a == aligned.end() || !features.count(inst.instance_id)) {
      ++no_audio;
      continue;
    }
    dataset::ManifestEntry e;
    e.instance_id = inst.instance_id;
    e.talk_id = inst.talk_id;
    e.language = inst.source_language;
    e.label = inst.label;
    e.arg1_text = s->second["arg1"]["text"].get<std::string>();
    e.arg2_text = s->second["arg2"]["text"].get<std::string>();
    e.arg1_clip = "../align/" + a->second["arg1"]["clip"].get<std::string>();
    e.arg2_clip = "../align/" + a->second["arg2"]["clip"].get<std::string>();
    e.sentence_index = s->second["sentence_index"].get<std::int64_t>();
    e.inter_sentential = s->second["inter_sentential"].get<bool>();
    e.witness_language = inst.witness_language;
    m.instances.push_back(std::move(e));
  }
  m.normalize();
  m.provenance = sha256_hex(read_file(ctx.of(Stage::kMine) / "instances.jsonl") +
                            read_file(ctx.of(Stage::kSegment) / "segments.jsonl") +
                            read_file(ctx.of(Stage::kAlign) / "aligned.jsonl") +
                            read_file(ctx.of(Stage::kProsody) / "features.jsonl"));
  save_manifest(m, ctx.dir / "manifest.jsonl");
  ctx.counts["in"] = instances.size();
  ctx.counts["out"] = m.instances.size();
  ctx.counts["without_segments"] = no_segment;
  ctx.counts["without_audio"] = no_audio;
  ctx.counts["manifest_sha256"] = m.content_hash();
}

void run_split(StageContext &ctx) {
  auto m = dataset::DatasetManifest::load(ctx.of(Stage::kAssemble) / "manifest.jsonl");
  dataset::split_manifest(m, split_specs(ctx.cfg, m));
  save_manifest(m, ctx.dir / "manifest.jsonl");
  for (const auto &[lang, s] : dataset::stats_report(m).languages)
    for (dataset::Split sp : {dataset::Split::kTrain, dataset::Split::kValidation, dataset::Split::kTest}) {
      const auto &cell = s.splits[static_cast<int>(sp)];
      ctx.counts[lang][std::string(dataset::split_name(sp))] = {{"relations", cell.relations}, {"talks", cell.talks}};
    }
  ctx.counts["manifest_sha256"] = m.content_hash();
}

void run_stats(StageContext &ctx) {
  auto m = dataset::DatasetManifest::load(ctx.of(Stage::kSplit) / "manifest.jsonl");
  auto r = dataset::stats_report(m);
  write_file(ctx.dir / "stats.json", r.to_json_text());
  write_file(ctx.dir / "stats.txt", r.to_text());
  for (const auto &[lang, s] : r.languages) ctx.counts[lang] = s.total.relations;
}

void run_train(StageContext &ctx) {
  const auto &cfg = ctx.cfg;
  auto m = dataset::DatasetManifest::load(ctx.of(Stage::kSplit) / "manifest.jsonl");
  auto train = load_examples(ctx, m, dataset::Split::kTrain);
  auto val = load_examples(ctx, m, dataset::Split::kValidation);
  if (train.empty()) throw ValidationError("the train split is empty");
  ojson summary;
  summary["model"] = cfg.model;
  summary["train_size"] = train.size();
  summary["validation_size"] = val.size();

  Container model;
  if (cfg.model == "fusion") {
    if (val.empty()) throw ValidationError("the validation split is empty");
    auto tr = encode_all(cfg, cfg.fusion, train);
    auto va = encode_all(cfg, cfg.fusion, val);
    auto fit = fusion::fit(cfg.fusion, cfg.train, tr, va, {{[&](const fusion::HistoryRow &h, const fusion::Params &) {
                                                            ctx.event("epoch", {{"epoch", h.epoch},
                                                                                {"train_loss", h.train_loss},
                                                                                {"val_loss", h.val_loss}});
                                                          }}});
    write_file(ctx.dir / "history.csv", fusion::history_csv(fit.history));
    model = fusion::to_container(cfg.fusion, fit.params);
    summary["best_epoch"] = fit.best_epoch;
    summary["best_val_loss"] = fit.best_val_loss;
    summary["diverged"] = fit.diverged;
    summary["early_stopped"] = fit.early_stopped;
    summary["class_weights"] = fit.class_weights;
  } else {
    baselines::LogRegOptions opts;
    opts.reg_lambda = cfg.baseline_lambda;
    auto weights = cfg.train.class_weights.empty() ? fusion::class_weights(labels_of(train), corpus::kNumLabels)
                                                   : cfg.train.class_weights;
    auto fit = baselines::fit_baseline(baselines::parse_baseline(cfg.model), baseline_inputs(train),
                                       corpus::kNumLabels, weights, opts);
    model = fit.model.to_container();
    summary["iterations"] = fit.logreg.iterations;
    summary["converged"] = fit.logreg.converged;
    summary["loss"] = fit.logreg.loss;
    summary["class_weights"] = weights;
  }
  model.save(ctx.dir / "model.bin");
  auto train_metrics = dataset::evaluate(predict_with(ctx, model, train), labels_of(train));
  summary["train_metrics"] = train_metrics.to_json();
  write_file(ctx.dir / "summary.json", summary.dump(2) + "\n");
  ctx.counts["train"] = train.size();
  ctx.counts["validation"] = val.size();
  ctx.counts["train_macro_f1"] = train_metrics.macro_f1;
}

void run_eval(StageContext &ctx) {
  auto m = dataset::DatasetManifest::load(ctx.of(Stage::kSplit) / "manifest.jsonl");
  auto test = load_examples(ctx, m, dataset::Split::kTest);
  if (test.empty()) throw ValidationError("the test split is empty");
  auto model = Container::load(ctx.of(Stage::kTrain) / "model.bin");
  auto pred = predict_with(ctx, model, test);
  auto gold = labels_of(test);
  auto metrics = dataset::evaluate(pred, gold);
  write_file(ctx.dir / "metrics.json", metrics.to_json().dump(2) + "\n");
  std::vector<ojson> rows;
  for (std::size_t i = 0; i < test.size(); ++i)
    rows.push_back({{"instance_id", test[i].entry->instance_id},
                    {"gold", corpus::label_name(corpus::label_from_index(gold[i]))},
                    {"predicted", corpus::label_name(corpus::label_from_index(pred[i]))}});
  write_file(ctx.dir / "predictions.jsonl", rows_to_jsonl(rows));
  ctx.counts["test"] = test.size();
  ctx.counts["accuracy"] = metrics.accuracy;
  ctx.counts["macro_f1"] = metrics.macro_f1;
}

void run_compare(StageContext &ctx) {
  if (ctx.cfg.gold.empty()) throw ConfigError("compare.gold is not set");
  auto m = dataset::DatasetManifest::load(ctx.of(Stage::kAssemble) / "manifest.jsonl");
  auto gold = dataset::parse_gold_jsonl(read_file(ctx.cfg.gold));
  auto r = dataset::compare_to_gold(m, gold);
  write_file(ctx.dir / "comparison.json", r.to_json().dump(2) + "\n");
  ctx.counts["gold"] = r.gold_total;
  ctx.counts["mined"] = r.mined_total;
  ctx.counts["matching"] = r.matching;
  ctx.counts["new"] = r.new_inter;
  ctx.counts["intra"] = r.intra;
}

void run_review_export(StageContext &ctx) {
  const fs::path split_dir = ctx.of(Stage::kSplit);
  auto m = dataset::DatasetManifest::load(split_dir / "manifest.jsonl");
  if (m.instances.empty()) throw ValidationError("nothing to review: the manifest is empty");
  std::vector<std::size_t> order(m.instances.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::uint64_t rng = splitmix64(ctx.cfg.review_seed ^ 0x726576696577ull);
  for (std::size_t k = order.size(); k > 1; --k) {
    rng = splitmix64(rng);
    std::swap(order[k - 1], order[rng % k]);
  }
  order.resize(std::min<std::size_t>(order.size(), static_cast<std::size_t>(ctx.cfg.review_sample_size)));

  const fs::path session = ctx.dir / "session";
  fs::create_directories(session / "clips");
  dataset::DatasetManifest slice;
  slice.provenance = m.content_hash();
  ojson ids = ojson::array();
  for (std::size_t i : order) {
    dataset::ManifestEntry e = m.instances[i];
    ids.push_back(e.instance_id);
    for (std::string *clip : {&e.arg1_clip, &e.arg2_clip}) {
      const fs::path src = split_dir / *clip;
      const std::string rel = "clips/" + src.filename().string();
      fs::copy_file(src, session / rel, fs::copy_options::overwrite_existing);
      *clip = rel;
    }
    slice.instances.push_back(std::move(e));
  }
  slice.normalize();
  save_manifest(slice, session / "manifest.jsonl");
  ojson meta;
  meta["source_manifest_sha256"] = m.content_hash();
  meta["seed"] = ctx.cfg.review_seed;
  meta["sample_size"] = order.size();
  meta["order"] = ids;
  write_file(session / "session.json", meta.dump(2) + "\n");
  ctx.counts["manifest"] = m.instances.size();
  ctx.counts["sampled"] = order.size();
}

void run_review_import(StageContext &ctx) {
  const auto &cfg = ctx.cfg;
  if (cfg.verdicts.empty()) throw ConfigError("review.verdicts is not set (or pass --verdicts)");
  auto session = dataset::DatasetManifest::load(ctx.of(Stage::kReviewExport) / "session" / "manifest.jsonl");
  std::set<std::string> in_session;
  for (const auto &e : session.instances) in_session.insert(e.instance_id);

  std::vector<review::Verdict> all;
  for (const auto &path : cfg.verdicts) {
    std::vector<review::Verdict> vs;
    try {
      vs = review::parse_verdicts(read_file(path));
    } catch (const ParseError &e) {
      throw ParseError(path.filename().string() + ": " + e.what(), e.line());
    }
    for (auto &v : vs) {
      if (!in_session.count(v.instance_id))
        throw ValidationError(path.filename().string() + ": verdict for " + v.instance_id + " outside the session");
      all.push_back(std::move(v));
    }
  }
  auto merged = review::merge_verdicts(all);
  write_file(ctx.dir / "verdicts.jsonl", review::export_verdicts(merged));
  auto reviews = review::resolve(merged);
  std::vector<ojson> filter;
  for (const auto &r : reviews) {
    ojson j;
    j["instance_id"] = r.instance_id;
    j["state"] = std::string(review::release_state_name(r.state));
    j["reviewers"] = r.reviewers;
    if (r.resolved) {
      j["decision"] = std::string(review::decision_name(r.resolved->decision));
      j["error_class"] =
          r.resolved->error_class ? ojson(review::error_class_name(*r.resolved->error_class)) : ojson(nullptr);
      j["corrected_spans"] = review::to_json(*r.resolved)["corrected_spans"];
    }
    filter.push_back(std::move(j));
  }
  write_file(ctx.dir / "filter.jsonl", rows_to_jsonl(filter));
  auto report = review::error_report(reviews);
  write_file(ctx.dir / "report.json", report.to_json().dump(2) + "\n");
  auto m = dataset::DatasetManifest::load(ctx.of(Stage::kSplit) / "manifest.jsonl");
  auto release = review::release_manifest(m, reviews);
  save_manifest(release, ctx.dir / "manifest.jsonl");
  ctx.counts["verdicts"] = all.size();
  ctx.counts["reviewed"] = report.reviewed;
  ctx.counts["excluded"] = report.excluded;
  ctx.counts["needs_adjudication"] = report.needs_adjudication;
  ctx.counts["released"] = release.instances.size();
}

}  // namespace idr::pipeline::detail
