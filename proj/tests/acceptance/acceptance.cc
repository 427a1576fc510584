// tests/acceptance/acceptance.cc

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

// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Run from ctest with the fixtures directory as the only argument.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "idr/base/io.h"
#include "idr/baselines/model.h"
#include "idr/dataset/gold.h"
#include "idr/dataset/metrics.h"
#include "idr/dataset/split.h"
#include "idr/dataset/stats.h"
#include "idr/fusion/backbone.h"
#include "idr/fusion/model.h"
#include "idr/fusion/params.h"
#include "idr/fusion/trainer.h"
#include "idr/mining/miner.h"
#include "idr/pipeline/fixture.h"
#include "idr/prosody/logmel.h"
#include "idr/prosody/pitch.h"
#include "idr/review/verdicts.h"
#include "support/fusion_fixtures.h"
#include "support/gen.h"
#include "support/signals.h"
#include "support/split_oracle.h"
#include "support/synthetic.h"
#include "support/table_fixture.h"

namespace fs = std::filesystem;
using namespace idr;
using idr::testing::Gen;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Collects failure notes for one criterion.
struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string &what) {
    if (!ok && failures.size() < 8) failures.push_back(what);
  }
};

std::string fmt(const char *f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// --- criteria -------------------------------------------------------------

std::string planted_mining(Check &c) {
  const auto t0 = Clock::now();
  const auto pc = pipeline::planted_corpus();
  mining::MinerConfig mc;
  mc.language_pairs = pc.language_pairs;
  const auto result = mining::mine_corpus(pc.talks, pc.lexicons(), mc);
  const double secs = seconds_since(t0);

  std::set<std::pair<std::string, int>> got, want;
  for (const auto &i : result.instances) got.insert({i.instance_id, corpus::label_index(i.label)});
  for (const auto &e : pc.events) want.insert({e.instance_id, corpus::label_index(e.label)});
  int tp = 0;
  for (const auto &x : got) tp += want.count(x);
  const double precision = got.empty() ? 0 : double(tp) / got.size();
  const double recall = double(tp) / want.size();
  c.expect(want.size() == 12, "planted events " + std::to_string(want.size()));
  c.expect(pc.distractors.size() == 8, "distractors " + std::to_string(pc.distractors.size()));
  c.expect(precision == 1.0, "precision " + fmt("%.4f", precision));
  c.expect(recall == 1.0, "recall " + fmt("%.4f", recall));
  c.expect(secs < 5.0, "runtime " + fmt("%.3f s", secs));
  return "emitted " + std::to_string(got.size()) + ", P=" + fmt("%.2f", precision) + " R=" + fmt("%.2f", recall) +
         ", " + fmt("%.3f s", secs);
}

std::string table_reproduction(Check &c, const fs::path &fixtures) {
  const std::string want = read_file(fixtures / "english_stats.json");
  const std::string got = dataset::stats_report(idr::testing::english_table_manifest()).to_json_text();
  c.expect(got == want, "stats JSON differs from english_stats.json");
  return "stats JSON " + std::string(got == want ? "byte-identical" : "differs") + " (" +
         std::to_string(got.size()) + " bytes)";
}

std::string split_invariants(Check &c) {
  const std::array<std::array<double, 3>, 3> ratio_sets = {
      dataset::default_split_spec("en").ratios, dataset::default_split_spec("fr").ratios,
      dataset::default_split_spec("es").ratios};
  int disjoint_violations = 0, ratio_misses = 0, optimum_misses = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Gen g(5000 + trial);
    auto talks = idr::testing::random_talks(g, 12);
    dataset::SplitSpec spec;
    spec.ratios = ratio_sets[trial % 3];
    spec.seed = trial;

    // Talk-disjointness is checked on the manifest-level split.
    dataset::DatasetManifest m;
    int n = 0;
    for (const auto &t : talks)
      for (int k = 0; k < 4; ++k)
        for (int j = 0; j < t.labels[k]; ++j) {
          dataset::ManifestEntry e;
          e.instance_id = "x" + std::to_string(n++);
          e.talk_id = t.talk_id;
          e.language = "en";
          e.label = static_cast<corpus::RelationLabel>(k);
          e.arg1_text = e.arg2_text = "a";
          e.arg1_clip = e.arg2_clip = "c.wav";
          m.instances.push_back(e);
        }
    m.normalize();
    dataset::split_manifest(m, {{"en", spec}});
    std::map<std::string, std::set<dataset::Split>> seen;
    for (const auto &e : m.instances) seen[e.talk_id].insert(e.split);
    for (const auto &[talk, splits] : seen) disjoint_violations += splits.size() != 1;

    const auto a = dataset::assign_talks(talks, spec);
    std::array<int, 3> sizes{};
    int total = 0, biggest = 0;
    for (std::size_t i = 0; i < talks.size(); ++i) {
      sizes[a[i]] += talks[i].total();
      total += talks[i].total();
      biggest = std::max(biggest, talks[i].total());
    }
    for (int j = 0; j < 3; ++j) ratio_misses += std::abs(sizes[j] - spec.ratios[j] * total) > biggest;

    const auto opt = idr::testing::exhaustive_split(talks, spec.ratios);
    optimum_misses += !opt.near(idr::testing::cell_table(talks, a), 1);
  }
  c.expect(disjoint_violations == 0, std::to_string(disjoint_violations) + " talks in two splits");
  c.expect(ratio_misses == 0, std::to_string(ratio_misses) + " split sizes beyond one talk of target");
  c.expect(optimum_misses == 0, std::to_string(optimum_misses) + " manifests off the exhaustive optimum by > 1");
  return "100 manifests: " + std::to_string(disjoint_violations) + " disjointness violations, " +
         std::to_string(ratio_misses) + " ratio misses, " + std::to_string(optimum_misses) + " optimum misses";
}

std::string ablation_identity(Check &c) {
  Gen g(101);
  double worst = 0;
  int bit_mismatch = 0;
  for (int trial = 0; trial < 50; ++trial) {
    fusion::FusionConfig cfg = idr::testing::small_config(2, 2);
    fusion::Params w = idr::testing::scrambled_params(cfg, g);
    w.gamma(0, 0) = 0.0;
    const Eigen::MatrixXd span = idr::testing::random_prosody(g, g.integer(1, 6), cfg.d);
    const Eigen::MatrixXd p = idr::testing::random_prosody(g, g.integer(1, 6), cfg.prosody_dim);
    const auto with = fusion::prosody_attend_pool(cfg, w, span, p, true);
    const Eigen::MatrixXd ln = fusion::layer_norm(span, w.ln1_g, w.ln1_b, cfg.ln_eps, nullptr);
    worst = std::max(worst, (with - fusion::RowVectorXd(ln.colwise().mean())).cwiseAbs().maxCoeff());

    // Whole model: ablation flag versus gamma = 0 with prosody on.
    fusion::StubBackbone stub(cfg.d);
    const auto ex = idr::testing::random_example(g, cfg);
    fusion::FusionConfig off = cfg;
    off.ablation.prosody = false;
    const auto t_gamma = fusion::forward(cfg, w, fusion::encode(stub, ex, cfg.ablation));
    const auto t_flag = fusion::forward(off, w, fusion::encode(stub, ex, off.ablation));
    bit_mismatch += !(t_gamma.logits.array() == t_flag.logits.array()).all();
  }
  c.expect(worst < 1e-12, "gamma=0 vs prosody-free " + fmt("%.3e", worst));
  c.expect(bit_mismatch == 0, std::to_string(bit_mismatch) + " flag/gamma=0 logit mismatches");
  return "max |gamma=0 - prosody-free| " + fmt("%.2e", worst) + ", " + std::to_string(bit_mismatch) +
         " bitwise mismatches in 50 draws";
}

std::string gradient_check(Check &c) {
  const auto t0 = Clock::now();
  Gen g(202);
  double worst = 0;
  std::string where;
  std::size_t checked = 0;
  for (int draw = 0; draw < 50; ++draw) {
    const int ph = g.pick(std::vector<int>{1, 2, 4}), pa = g.pick(std::vector<int>{1, 2, 4});
    fusion::FusionConfig cfg = idr::testing::small_config(ph, pa);
    cfg.ablation = {g.coin(0.8), g.coin(0.8), g.coin(0.8), g.coin(0.8)};
    fusion::Params w = idr::testing::scrambled_params(cfg, g);
    fusion::StubBackbone stub(cfg.d, g.integer(0, 1 << 20));
    const auto ex = fusion::encode(stub, idr::testing::random_example(g, cfg), cfg.ablation);
    const auto r = idr::testing::check_gradients(cfg, w, ex, g.real(0.5, 2.0), 1e-4);
    checked += r.checked;
    if (r.max_rel > worst) {
      worst = r.max_rel;
      where = r.worst;
    }
  }
  const double secs = seconds_since(t0);
  c.expect(worst < 1e-4, "max relative error " + fmt("%.3e", worst) + " at " + where);
  c.expect(secs < 60.0, "runtime " + fmt("%.1f s", secs));
  return "50 draws, " + std::to_string(checked) + " entries, max rel " + fmt("%.2e", worst) + ", " +
         fmt("%.2f s", secs);
}

std::string mask_contract(Check &c) {
  Gen g(303);
  double worst = 0;
  int negative_sigma = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    fusion::FusionConfig cfg = idr::testing::small_config(1, 1);
    fusion::Params w = idr::testing::scrambled_params(cfg, g);
    const auto m = idr::testing::random_logmel(g, cfg.mel_bins, g.integer(1, 10), 0);
    const auto pad = idr::testing::random_logmel(g, cfg.mel_bins, 0, g.integer(1, 64));
    prosody::LogMel joined;
    joined.frames.resize(cfg.mel_bins, m.frames.cols() + pad.frames.cols());
    joined.frames << m.frames, pad.frames * g.real(1, 1000);
    joined.mask = m.mask;
    joined.mask.insert(joined.mask.end(), pad.mask.begin(), pad.mask.end());
    worst = std::max(worst, (fusion::stats_pool(cfg, w, m) - fusion::stats_pool(cfg, w, joined)).cwiseAbs().maxCoeff());
    fusion::StatsTrace t;
    fusion::stats_vector(cfg, w, joined, &t);
    negative_sigma += !(t.sigma.array() >= 0).all();
  }
  c.expect(worst < 1e-12, "padding moved the pooled vector by " + fmt("%.3e", worst));
  c.expect(negative_sigma == 0, std::to_string(negative_sigma) + " inputs with negative sigma");
  return "1000 inputs, max padding effect " + fmt("%.2e", worst) + ", " + std::to_string(negative_sigma) +
         " negative sigma";
}

std::string normalization(Check &c) {
  Gen g(404);
  double z_err = 0, p_err = 0;
  for (int trial = 0; trial < 200; ++trial) {
    fusion::FusionConfig cfg = idr::testing::small_config(2, 2);
    fusion::Params w = idr::testing::scrambled_params(cfg, g);
    fusion::StubBackbone stub(cfg.d);
    const auto t = fusion::forward(cfg, w, fusion::encode(stub, idr::testing::random_example(g, cfg), cfg.ablation));
    z_err = std::max(z_err, std::abs(t.z.norm() - 1));
    p_err = std::max(p_err, std::abs(t.probs.sum() - 1));
  }
  std::vector<int> balanced;
  for (int i = 0; i < 40; ++i) balanced.push_back(i % 4);
  const auto cw = fusion::class_weights(balanced, 4);
  const bool equal = std::all_of(cw.begin(), cw.end(), [&](double x) { return x == cw[0]; });
  c.expect(z_err <= 1e-6, "|‖z‖ - 1| " + fmt("%.3e", z_err));
  c.expect(p_err <= 1e-6, "|Σ softmax - 1| " + fmt("%.3e", p_err));
  c.expect(equal, "balanced class weights differ");
  return "max |‖z‖-1| " + fmt("%.1e", z_err) + ", max |Σp-1| " + fmt("%.1e", p_err) + ", balanced weights " +
         fmt("%.3f", cw[0]);
}

std::vector<int> labels_of(const std::vector<fusion::FusionExample> &xs) {
  std::vector<int> y;
  for (const auto &x : xs) y.push_back(x.label);
  return y;
}

std::string trainer_sanity(Check &c) {
  fusion::FusionConfig cfg = idr::testing::small_config(2, 2);
  cfg.d = 16;
  cfg.proj_dim = 16;
  const auto data = idr::testing::separable_set(7, 200, cfg);
  const auto y = labels_of(data);

  fusion::TrainConfig tc;
  tc.epochs = 7;
  tc.grad_accum = 1;
  tc.lr_heads = 3e-3;
  tc.lr_stats_head = 3e-3;
  tc.weight_decay = 0.0;
  tc.patience = 7;
  tc.seed = 21;

  auto run_fusion = [&] {
    fusion::StubBackbone stub(cfg.d);
    std::vector<fusion::EncodedExample> enc;
    for (const auto &ex : data) enc.push_back(fusion::encode(stub, ex, cfg.ablation));
    auto r = fusion::fit(cfg, tc, enc, enc);
    std::vector<int> pred;
    for (const auto &e : enc) pred.push_back(fusion::predict(cfg, r.params, e));
    return std::make_pair(dataset::evaluate(pred, y).macro_f1, fusion::to_container(cfg, r.params).serialize());
  };
  auto run_tfidf = [&] {
    std::vector<baselines::BaselineInput> in;
    for (const auto &ex : data) in.push_back({ex.arg1_text, ex.arg2_text, {}, {}, ex.label});
    baselines::LogRegOptions o;
    o.init_seed = 21;
    auto f = baselines::fit_baseline(baselines::BaselineKind::kTfidf, in, 4, fusion::class_weights(y, 4), o);
    return std::make_pair(dataset::evaluate(f.model.predict(in), y).macro_f1, f.model.to_container().serialize());
  };

  const auto f1 = run_fusion(), f2 = run_fusion();
  const auto b1 = run_tfidf(), b2 = run_tfidf();
  c.expect(f1.first >= 0.95, "fusion training macro-F1 " + fmt("%.4f", f1.first));
  c.expect(b1.first >= 0.95, "tf-idf training macro-F1 " + fmt("%.4f", b1.first));
  c.expect(f1.second == f2.second, "fusion reruns differ");
  c.expect(b1.second == b2.second, "tf-idf reruns differ");
  return "fusion F1 " + fmt("%.3f", f1.first) + ", tf-idf F1 " + fmt("%.3f", b1.first) + ", reruns " +
         std::string(f1.second == f2.second && b1.second == b2.second ? "bit-identical" : "differ");
}

std::string metrics_oracle(Check &c) {
  const std::vector<std::array<int, 4>> rows = {{5, 1, 0, 2}, {1, 6, 1, 0}, {0, 2, 3, 1}, {1, 0, 1, 6}};
  std::vector<int> pred, gold;
  for (int gl = 0; gl < 4; ++gl)
    for (int p = 0; p < 4; ++p)
      for (int k = 0; k < rows[gl][p]; ++k) {
        gold.push_back(gl);
        pred.push_back(p);
      }
  const auto m = dataset::evaluate(pred, gold);
  const std::array<double, 4> prec{5.0 / 7, 6.0 / 9, 3.0 / 5, 6.0 / 9}, rec{5.0 / 8, 6.0 / 8, 3.0 / 6, 6.0 / 8},
      f1{10.0 / 15, 12.0 / 17, 6.0 / 11, 12.0 / 17};
  c.expect(m.accuracy == 20.0 / 30.0, "accuracy " + fmt("%.17g", m.accuracy));
  c.expect(m.precision == prec, "per-class precision");
  c.expect(m.recall == rec, "per-class recall");
  c.expect(m.f1 == f1, "per-class F1");
  c.expect(m.macro_precision == (prec[0] + prec[1] + prec[2] + prec[3]) / 4, "macro precision");
  c.expect(m.macro_recall == (rec[0] + rec[1] + rec[2] + rec[3]) / 4, "macro recall");
  c.expect(m.macro_f1 == (f1[0] + f1[1] + f1[2] + f1[3]) / 4, "macro F1");
  return "accuracy " + fmt("%.4f", m.accuracy) + ", macro-F1 " + fmt("%.4f", m.macro_f1);
}

audio::AudioClip clip_of(std::vector<float> x) {
  audio::AudioClip clip;
  clip.samples = std::move(x);
  clip.sample_rate = 16000;
  clip.origin = {0.0, clip.duration()};
  return clip;
}

std::string prosody_dsp(Check &c) {
  std::string notes;
  for (double f : {100.0, 200.0, 300.0}) {
    const auto track = prosody::track_pitch(idr::testing::tone(f, 0.5, 16000, 0.5));
    double worst = 0, sum = 0;
    int voiced = 0;
    for (const auto &p : track) {
      if (!p.voiced) continue;
      ++voiced;
      sum += p.f0;
      worst = std::max(worst, std::abs(p.f0 - f) / f);
    }
    c.expect(voiced == static_cast<int>(track.size()) && voiced > 0, fmt("%.0f Hz: unvoiced frames", f));
    c.expect(worst <= 0.01, fmt("%.0f Hz: ", f) + fmt("relative error %.4f", worst));
    notes += fmt("%.0f Hz->", f) + fmt("%.2f, ", voiced ? sum / voiced : 0.0);
  }
  const auto lm = prosody::compute_logmel(clip_of(idr::testing::tone(440, 1.0, 16000)));
  c.expect(lm.frames.cols() == 98, "1 s frames " + std::to_string(lm.frames.cols()));
  const auto quiet = prosody::compute_logmel(clip_of(std::vector<float>(16000, 0.0f)));
  const double off_floor = (quiet.frames.array() - std::log(1e-10)).abs().maxCoeff();
  c.expect(off_floor == 0.0, "silence off the floor by " + fmt("%.3e", off_floor));
  return notes + std::to_string(lm.frames.cols()) + " frames/s, silence off floor by " + fmt("%.1e", off_floor);
}

std::string gold_comparison(Check &c) {
  Gen g(606);
  int mismatched = 0;
  for (int trial = 0; trial < 100; ++trial) {
    dataset::DatasetManifest m;
    std::vector<dataset::GoldRelation> gold;
    const std::vector<std::string> talks{"t1", "t2", "t3"};
    for (int i = g.integer(0, 25); i > 0; --i) {
      dataset::ManifestEntry e;
      e.instance_id = "m" + std::to_string(m.instances.size());
      e.talk_id = g.pick(talks);
      e.sentence_index = g.integer(0, 20);
      e.inter_sentential = g.coin(0.8);
      e.witness_language = g.coin(0.5) ? "en" : "de";
      m.instances.push_back(e);
    }
    for (int i = g.integer(0, 25); i > 0; --i) {
      dataset::GoldRelation r;
      r.talk_id = g.pick(talks);
      r.sentence_index = g.integer(0, 20);
      gold.push_back(r);
    }
    // Oracle: plain set arithmetic over (talk, Arg2 sentence) keys.
    std::set<std::pair<std::string, std::int64_t>> mined_keys, gold_keys;
    int intra = 0, fresh = 0, matching = 0;
    for (const auto &e : m.instances)
      if (e.inter_sentential) mined_keys.insert({e.talk_id, e.sentence_index});
      else ++intra;
    for (const auto &r : gold) gold_keys.insert({r.talk_id, r.sentence_index});
    for (const auto &e : m.instances) fresh += e.inter_sentential && !gold_keys.count({e.talk_id, e.sentence_index});
    for (const auto &r : gold) matching += mined_keys.count({r.talk_id, r.sentence_index});

    const auto rep = dataset::compare_to_gold(m, gold);
    mismatched += rep.matching != matching || rep.new_inter != fresh || rep.intra != intra;
    const auto j = rep.to_json();
    mismatched += !(j.contains("matching") && j.contains("new") && j.contains("intra"));
  }
  c.expect(mismatched == 0, std::to_string(mismatched) + " fixtures disagree with the set oracle");
  return "100 fixtures, " + std::to_string(mismatched) + " disagreements; report fields matching/new/intra";
}

std::string review_round_trip(Check &c) {
  dataset::DatasetManifest m;
  for (int i = 0; i < 100; ++i) {
    dataset::ManifestEntry e;
    char id[16];
    std::snprintf(id, sizeof id, "fr-%04d", i);
    e.instance_id = id;
    e.talk_id = "talk-" + std::to_string(i / 10);
    e.language = "fr";
    e.label = static_cast<corpus::RelationLabel>(i % 4);
    e.arg1_text = e.arg2_text = "a";
    e.arg1_clip = e.arg2_clip = "c.wav";
    m.instances.push_back(e);
  }
  m.normalize();
  // Six segmentation fixes (four extraneous content, two early cuts), two
  // not-implicit rejects, the rest accepted.
  std::vector<review::Verdict> vs;
  std::set<std::string> rejected;
  for (int i = 0; i < 100; ++i) {
    review::Verdict v;
    v.instance_id = m.instances[i].instance_id;
    v.reviewer_id = "r1";
    v.timestamp = "2026-01-01T00:00:00Z";
    if (i % 16 == 3 && i < 96) {
      v.decision = review::Decision::kFix;
      v.error_class = i < 64 ? review::ErrorClass::kExtraneousContent : review::ErrorClass::kEarlyCut;
      v.corrected_spans = review::CorrectedSpans{{0, 1}, {0, 1}};
    } else if (i == 40 || i == 77) {
      v.decision = review::Decision::kReject;
      v.error_class = review::ErrorClass::kNotImplicit;
      rejected.insert(v.instance_id);
    }
    vs.push_back(v);
  }
  const auto reviews = review::resolve(review::merge_verdicts(review::parse_verdicts(review::export_verdicts(vs))));
  const auto report = review::error_report(reviews);
  const auto released = review::release_manifest(m, reviews);
  std::set<std::string> kept;
  for (const auto &e : released.instances) kept.insert(e.instance_id);
  bool exact = kept.size() == 98;
  for (const auto &id : rejected) exact = exact && !kept.count(id);
  const double seg = report.segmentation_rate(), ni = report.not_implicit_rate();
  c.expect(seg == 0.06, "segmentation rate " + fmt("%.4f", seg));
  c.expect(ni == 0.02, "not-implicit rate " + fmt("%.4f", ni));
  c.expect(exact, "release manifest does not exclude exactly the rejects");
  return fmt("segmentation %.0f%%, ", seg * 100) + fmt("not-implicit %.0f%%, ", ni * 100) +
         std::to_string(kept.size()) + " released";
}

}  // namespace

int main(int argc, char **argv) {
  const fs::path fixtures = argc > 1 ? fs::path(argv[1]) : fs::path("tests/fixtures");
  struct Criterion {
    const char *name;
    std::function<std::string(Check &)> run;
  };
  const std::vector<Criterion> criteria = {
      {"planted-corpus mining", planted_mining},
      {"table reproduction", [&](Check &c) { return table_reproduction(c, fixtures); }},
      {"split invariants", split_invariants},
      {"ablation identity", ablation_identity},
      {"gradient check", gradient_check},
      {"stats-pooling mask contract", mask_contract},
      {"normalization contracts", normalization},
      {"trainer sanity", trainer_sanity},
      {"metrics oracle", metrics_oracle},
      {"prosody DSP", prosody_dsp},
      {"gold-comparison arithmetic", gold_comparison},
      {"review round trip", review_round_trip},
  };
  int failed = 0;
  for (const auto &cr : criteria) {
    Check c;
    std::string detail;
    try {
      detail = cr.run(c);
    } catch (const std::exception &e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const bool ok = c.failures.empty();
    failed += !ok;
    std::printf("%s  %-28s %s\n", ok ? "PASS" : "FAIL", cr.name, detail.c_str());
    for (const auto &f : c.failures) std::printf("      - %s\n", f.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
