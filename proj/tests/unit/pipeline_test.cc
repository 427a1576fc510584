// tests/unit/pipeline_test.cc

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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <map>
#include <set>

#include "idr/base/error.h"
#include "idr/base/hash.h"
#include "idr/base/io.h"
#include "idr/dataset/manifest.h"
#include "idr/mining/miner.h"
#include "idr/pipeline/config.h"
#include "idr/pipeline/fixture.h"
#include "idr/pipeline/stages.h"
#include "idr/review/verdicts.h"

using namespace idr;
using namespace idr::pipeline;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string &name) {
  const fs::path d = fs::temp_directory_path() / ("idr_pipeline_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

const std::string kMinimal =
    "[corpus]\n"
    "talks = \"talks.json\"\n"
    "subtitles_dir = \"subtitles\"\n"
    "audio_dir = \"audio\"\n"
    "[lexicons]\n"
    "en = \"lexicons/en.tsv\"\n"
    "fr = \"lexicons/fr.tsv\"\n"
    "[mining]\n"
    "pairs = { fr = [\"en\"] }\n";

int cli(const std::string &args) {
  const std::string cmd = std::string(IDR_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::map<std::string, std::string> tree_hashes(const fs::path &out) {
  std::map<std::string, std::string> h;
  for (const auto &e : fs::recursive_directory_iterator(out)) {
    if (!e.is_regular_file()) continue;
    const auto rel = fs::relative(e.path(), out).generic_string();
    if (rel.rfind("logs/", 0) == 0) continue;
    h[rel] = sha256_file(e.path());
  }
  return h;
}

void run_all(const PipelineConfig &cfg) {
  for (Stage s : default_sequence(cfg)) run_stage(s, cfg);
}

}  // namespace

TEST_SUITE("pipeline") {
  TEST_CASE("config parses sections and resolves paths against the config directory") {
    auto cfg = parse_config("seed = 7\n" + kMinimal + "[split.fr]\nratios = [0.5, 0.25, 0.25]\n[model]\nkind = \"tfidf\"\n",
                            "/base");
    CHECK(cfg.seed == 7);
    CHECK(cfg.talks == fs::path("/base/talks.json"));
    CHECK(cfg.output_dir == fs::path("/base/out"));
    CHECK(cfg.language_pairs.at("fr") == std::vector<std::string>{"en"});
    CHECK(cfg.splits.at("fr").ratios[0] == 0.5);
    CHECK(cfg.splits.at("fr").seed == 7);
    CHECK(cfg.train.seed == 7);
    CHECK(cfg.model == "tfidf");
  }

  TEST_CASE("seed flag replaces the file seed everywhere it propagates") {
    auto cfg = parse_config("seed = 7\n" + kMinimal + "[split.fr]\nratios = [0.6, 0.2, 0.2]\n", "/base", 99);
    CHECK(cfg.seed == 99);
    CHECK(cfg.splits.at("fr").seed == 99);
    CHECK(cfg.train.seed == 99);
  }

  TEST_CASE("config errors") {
    CHECK_THROWS_AS(parse_config(kMinimal + "bogus = 1\n", "/b"), ConfigError);
    CHECK_THROWS_AS(parse_config(kMinimal + "[mining]\nnope = 2\n", "/b"), ConfigError);
    CHECK_THROWS_AS(parse_config("[corpus\n", "/b"), ConfigError);
    CHECK_THROWS_AS(parse_config(kMinimal + "[split.fr]\nratios = [0.5, 0.5]\n", "/b"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/idr.toml"), ConfigError);
  }

  TEST_CASE("validation catches bad ratios, missing paths and unpaired lexicons") {
    const fs::path dir = fresh_dir("validate");
    const fs::path config = write_planted_fixture(dir);
    CHECK_NOTHROW(load_config(config).validate());

    auto with = [&](const std::string &extra) { return parse_config(read_file(config) + extra, dir); };
    CHECK_THROWS_AS(with("[split.en]\nratios = [0.5, 0.2, 0.2]\n").validate(), ConfigError);
    CHECK_THROWS_AS(with("[review]\nverdicts = [\"missing.jsonl\"]\n").validate(), ConfigError);

    auto cfg = load_config(config);
    cfg.language_pairs["fr"].push_back("es");
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = load_config(config);
    cfg.talks = dir / "nope.json";
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = load_config(config);
    cfg.model = "svm";
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }

  TEST_CASE("stage names and upstream graph") {
    for (Stage s : all_stages()) CHECK(parse_stage(stage_name(s)) == s);
    CHECK(all_stages().size() == 13);
    CHECK_THROWS_AS(parse_stage("deploy"), ConfigError);
    // upstream stages come earlier in the stage order
    for (Stage s : all_stages())
      for (Stage u : upstream_of(s)) CHECK(static_cast<int>(u) < static_cast<int>(s));
  }

  TEST_CASE("planted corpus mines exactly the planted events") {
    const auto pc = planted_corpus();
    mining::MinerConfig mc;
    mc.language_pairs = pc.language_pairs;
    const auto result = mining::mine_corpus(pc.talks, pc.lexicons(), mc);
    std::map<std::string, corpus::RelationLabel> got, want;
    for (const auto &i : result.instances) got[i.instance_id] = i.label;
    for (const auto &e : pc.events) want[e.instance_id] = e.label;
    CHECK(want.size() == 12);
    CHECK(got == want);

    for (const auto &d : pc.distractors) {
      int hits = 0;
      for (const auto &r : result.records)
        if (r.talk_id == d.talk_id && r.source_index == d.source_index && r.target_language == d.witness_language) {
          ++hits;
          CHECK_FALSE(r.emitted);
          REQUIRE(r.reason.has_value());
          CHECK(drop_code(*r.reason) == d.reason);
        }
      CHECK(hits == 1);
    }
    CHECK(pc.distractors.size() == 8);
  }

  TEST_CASE("full run on the planted fixture") {
    const fs::path dir = fresh_dir("full");
    auto cfg = load_config(write_planted_fixture(dir));
    cfg.validate();
    run_all(cfg);

    const auto mine = nlohmann::json::parse(read_file(cfg.output_dir / "mine" / "stage.json"));
    const auto counts = mine["counts"];
    CHECK(counts["emitted"] == 12);
    CHECK(counts["candidates"].get<int>() - 12 == counts["dropped_by_filter"].get<int>());
    CHECK(counts["dropped"]["DUP"] == 2);
    CHECK(counts["dropped"]["SRC_EXPLICIT"] == 2);
    CHECK(counts["dropped"]["DUR_RATIO"] == 2);
    CHECK(counts["dropped"]["NON_DISCOURSE_INTENSIFIER"] == 2);

    auto m = dataset::DatasetManifest::load(cfg.output_dir / "split" / "manifest.jsonl");
    CHECK(m.instances.size() == 12);
    const auto truth = nlohmann::json::parse(read_file(dir / "truth.json"));
    std::map<std::string, nlohmann::json> events;
    for (const auto &e : truth["events"]) events[e["instance_id"].get<std::string>()] = e;
    for (const auto &e : m.instances) {
      REQUIRE(events.count(e.instance_id));
      const auto &t = events[e.instance_id];
      CHECK(e.arg1_text == t["arg1_text"].get<std::string>());
      CHECK(e.arg2_text == t["arg2_text"].get<std::string>());
      CHECK(e.sentence_index == t["sentence_index"].get<std::int64_t>());
      CHECK(e.split != dataset::Split::kUnassigned);
    }
    CHECK_NOTHROW(dataset::check_clips(m, cfg.output_dir / "split"));

    const auto seg = nlohmann::json::parse(read_file(cfg.output_dir / "segment" / "stage.json"));
    CHECK(seg["counts"]["external"] == 12);

    const auto cmp = nlohmann::json::parse(read_file(cfg.output_dir / "compare" / "comparison.json"));
    CHECK(cmp["matching"] == 4);
    CHECK(cmp["new"] == 6);
    CHECK(cmp["intra"] == 2);

    CHECK(fs::exists(cfg.output_dir / "eval" / "metrics.json"));
    CHECK(fs::exists(cfg.output_dir / "train" / "model.bin"));
    CHECK(fs::exists(cfg.output_dir / "review-export" / "session" / "manifest.jsonl"));
  }

  TEST_CASE("reruns are up to date and tampering is detected") {
    const fs::path dir = fresh_dir("rerun");
    auto cfg = load_config(write_planted_fixture(dir));
    for (Stage s : {Stage::kIngest, Stage::kMine}) CHECK(run_stage(s, cfg).status == "ran");
    const auto before = tree_hashes(cfg.output_dir);
    CHECK(run_stage(Stage::kMine, cfg).status == "up-to-date");
    CHECK(tree_hashes(cfg.output_dir) == before);

    write_file(cfg.output_dir / "mine" / "instances.jsonl", "");
    CHECK(run_stage(Stage::kMine, cfg).status == "ran");
    CHECK(tree_hashes(cfg.output_dir) == before);

    RunOptions force;
    force.force = true;
    CHECK(run_stage(Stage::kMine, cfg, force).status == "ran");
    CHECK(tree_hashes(cfg.output_dir) == before);

    // a changed lexicon changes the fingerprint
    write_file(dir / "lexicons" / "en.tsv", read_file(dir / "lexicons" / "en.tsv") + "thus\tcause-effect\tfalse\n");
    CHECK(run_stage(Stage::kMine, cfg).status == "ran");
  }

  TEST_CASE("missing upstream names the stage to run") {
    const fs::path dir = fresh_dir("upstream");
    auto cfg = load_config(write_planted_fixture(dir));
    try {
      run_stage(Stage::kSplit, cfg);
      FAIL("expected UpstreamMissing");
    } catch (const UpstreamMissing &e) {
      CHECK(std::string(e.what()).find("idr run assemble") != std::string::npos);
    }
    auto p = plan({Stage::kIngest, Stage::kMine, Stage::kTrain}, cfg);
    CHECK(p[0].status == "would run");
    CHECK(p[1].status == "would run");
    CHECK(p[2].status == "blocked");
    CHECK(p[2].detail.find("split") != std::string::npos);
  }

  TEST_CASE("manifest hash is stable across runs and locations") {
    std::string hashes[2];
    std::map<std::string, std::string> trees[2];
    for (int k = 0; k < 2; ++k) {
      const fs::path dir = fresh_dir("determinism" + std::to_string(k));
      auto cfg = load_config(write_planted_fixture(dir));
      run_all(cfg);
      hashes[k] = dataset::DatasetManifest::load(cfg.output_dir / "split" / "manifest.jsonl").content_hash();
      trees[k] = tree_hashes(cfg.output_dir);
    }
    CHECK(hashes[0] == hashes[1]);
    CHECK(trees[0] == trees[1]);
  }

  TEST_CASE("review export and import filter the release") {
    const fs::path dir = fresh_dir("review");
    auto cfg = load_config(write_planted_fixture(dir));
    run_all(cfg);
    auto session = dataset::DatasetManifest::load(cfg.output_dir / "review-export" / "session" / "manifest.jsonl");
    REQUIRE(session.instances.size() == 12);
    CHECK_NOTHROW(dataset::check_clips(session, cfg.output_dir / "review-export" / "session"));

    std::vector<review::Verdict> vs;
    for (std::size_t i = 0; i < session.instances.size(); ++i) {
      review::Verdict v;
      v.instance_id = session.instances[i].instance_id;
      v.reviewer_id = "r1";
      v.timestamp = "2026-05-01T12:00:00Z";
      if (i == 0) {
        v.decision = review::Decision::kReject;
        v.error_class = review::ErrorClass::kNotImplicit;
      } else if (i == 1) {
        v.decision = review::Decision::kFix;
        v.error_class = review::ErrorClass::kEarlyCut;
        v.corrected_spans = review::CorrectedSpans{{0, 5}, {6, 12}};
      }
      vs.push_back(v);
    }
    write_file(dir / "verdicts.jsonl", review::export_verdicts(vs));
    cfg.verdicts = {dir / "verdicts.jsonl"};
    cfg.validate();
    auto report = run_stage(Stage::kReviewImport, cfg);
    CHECK(report.counts["released"] == 11);
    CHECK(report.counts["excluded"] == 1);
    auto release = dataset::DatasetManifest::load(cfg.output_dir / "review-import" / "manifest.jsonl");
    for (const auto &e : release.instances) CHECK(e.instance_id != session.instances[0].instance_id);
    CHECK(read_file(cfg.output_dir / "review-import" / "verdicts.jsonl") == read_file(dir / "verdicts.jsonl"));
    CHECK(run_stage(Stage::kReviewImport, cfg).status == "up-to-date");

    // a verdict for an instance outside the session is rejected
    review::Verdict stray;
    stray.instance_id = "talk-9999-fr-s00001-contrast";
    stray.reviewer_id = "r1";
    write_file(dir / "verdicts.jsonl", review::export_verdicts({stray}));
    CHECK_THROWS_AS(run_stage(Stage::kReviewImport, cfg), ValidationError);
  }

  TEST_CASE("cli exit codes") {
    const fs::path dir = fresh_dir("cli");
    REQUIRE(cli("fixture " + dir.string()) == 0);
    const std::string config = (dir / "idr.toml").string();

    write_file(dir / "bad.toml", read_file(config) + "[split.en]\nratios = [0.5, 0.2, 0.2]\n");
    CHECK(cli("run split --config " + (dir / "bad.toml").string()) == 2);
    CHECK(cli("run nosuchstage --config " + config) == 2);
    CHECK(cli("run mine --config " + config) == 3);
    CHECK(cli("run ingest mine --config " + config + " -q") == 0);
    CHECK(cli("run all --config " + config + " --dry-run") == 0);
    CHECK(fs::exists(dir / "out" / "logs" / "events.jsonl"));

    // corrupt an upstream artifact: the next stage fails
    write_file(dir / "out" / "mine" / "instances.jsonl", "{broken\n");
    CHECK(cli("run segment --config " + config + " -q") == 4);
  }
}
