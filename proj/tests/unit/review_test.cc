// tests/unit/review_test.cc

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
#include <cstdio>
#include <set>

#include "idr/base/error.h"
#include "idr/review/verdicts.h"
#include "support/gen.h"

using namespace idr;
using namespace idr::review;
using idr::testing::Gen;

namespace {

Verdict accept(const std::string &id, const std::string &who = "r1", const std::string &ts = "2026-01-01T00:00:00Z") {
  Verdict v;
  v.instance_id = id;
  v.reviewer_id = who;
  v.timestamp = ts;
  return v;
}

Verdict reject(const std::string &id, ErrorClass e, const std::string &who = "r1") {
  Verdict v = accept(id, who);
  v.decision = Decision::kReject;
  v.error_class = e;
  return v;
}

Verdict fix(const std::string &id, ErrorClass e, const std::string &who = "r1") {
  Verdict v = accept(id, who);
  v.decision = Decision::kFix;
  v.error_class = e;
  v.corrected_spans = CorrectedSpans{{0, 10}, {11, 30}};
  return v;
}

std::string id_of(int i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "talk-%02d-en-s%05d-contrast", i % 7, i);
  return buf;
}

Verdict random_verdict(Gen &g, const std::string &id, const std::string &who) {
  const std::vector<ErrorClass> classes = {ErrorClass::kExtraneousContent, ErrorClass::kEarlyCut,
                                           ErrorClass::kNotImplicit, ErrorClass::kWrongLabel};
  Verdict v = accept(id, who, "2026-0" + std::to_string(g.integer(1, 9)) + "-1" + std::to_string(g.integer(0, 9)));
  switch (g.integer(0, 2)) {
    case 0:
      if (g.coin()) v.error_class = g.pick(classes);
      break;
    case 1:
      v.decision = Decision::kReject;
      v.error_class = g.pick(classes);
      break;
    default: {
      v.decision = Decision::kFix;
      if (g.coin()) v.error_class = g.pick(classes);
      const auto a = static_cast<std::size_t>(g.integer(0, 40));
      const auto b = a + static_cast<std::size_t>(g.integer(1, 40));
      v.corrected_spans = CorrectedSpans{{0, a + 1}, {b, b + static_cast<std::size_t>(g.integer(1, 60))}};
    }
  }
  return v;
}

dataset::DatasetManifest manifest_of(int n) {
  dataset::DatasetManifest m;
  for (int i = 0; i < n; ++i) {
    dataset::ManifestEntry e;
    e.instance_id = id_of(i);
    e.talk_id = "talk-" + std::to_string(i % 7);
    e.language = "en";
    e.label = corpus::RelationLabel::kContrast;
    e.arg1_text = "a";
    e.arg2_text = "b";
    e.arg1_clip = "c1.wav";
    e.arg2_clip = "c2.wav";
    m.instances.push_back(e);
  }
  m.normalize();
  return m;
}

}  // namespace

TEST_SUITE("review") {
  TEST_CASE("verdict invariants") {
    CHECK_NOTHROW(validate(accept("x")));
    Verdict v = accept("x");
    v.decision = Decision::kFix;
    CHECK_THROWS_AS(validate(v), ValidationError);
    v.decision = Decision::kReject;
    CHECK_THROWS_AS(validate(v), ValidationError);
    v.error_class = ErrorClass::kNotImplicit;
    CHECK_NOTHROW(validate(v));
    CHECK_THROWS_AS(validate(accept("")), ValidationError);
    CHECK_THROWS_AS(validate(accept("x", "")), ValidationError);
  }

  TEST_CASE("names round trip") {
    for (auto d : {Decision::kAccept, Decision::kReject, Decision::kFix}) CHECK(parse_decision(decision_name(d)) == d);
    for (auto e : {ErrorClass::kExtraneousContent, ErrorClass::kEarlyCut, ErrorClass::kNotImplicit,
                   ErrorClass::kWrongLabel})
      CHECK(parse_error_class(error_class_name(e)) == e);
    CHECK(error_class_name(ErrorClass::kExtraneousContent) == "extraneous_content");
    CHECK_THROWS(parse_decision("maybe"));
    CHECK(is_segmentation_error(ErrorClass::kEarlyCut));
    CHECK_FALSE(is_segmentation_error(ErrorClass::kNotImplicit));
  }

  TEST_CASE("schema violations carry the row number") {
    const std::string good = to_json(accept("a")).dump();
    try {
      parse_verdicts(good + "\n" + R"({"instance_id":"b","decision":"reject","reviewer_id":"r1"})" + "\n");
      FAIL("expected ParseError");
    } catch (const ParseError &e) {
      CHECK(e.line() == 2);
    }
    try {
      parse_verdicts(good + "\n\n{not json\n");
      FAIL("expected ParseError");
    } catch (const ParseError &e) {
      CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(parse_verdicts(R"({"instance_id":"a","decision":"shrug","reviewer_id":"r"})"), ParseError);
  }

  TEST_CASE("empty session is an error") {
    CHECK_THROWS_AS(export_verdicts({}), ValidationError);
  }

  TEST_CASE("one verdict per instance and reviewer in an export") {
    CHECK_THROWS_AS(export_verdicts({accept("a"), reject("a", ErrorClass::kWrongLabel)}), ValidationError);
    CHECK_NOTHROW(export_verdicts({accept("a", "r1"), accept("a", "r2")}));
  }

  TEST_CASE("export sorts by instance then reviewer") {
    auto body = export_verdicts({accept("b", "r2"), accept("b", "r1"), accept("a", "r9")});
    auto back = parse_verdicts(body);
    REQUIRE(back.size() == 3);
    CHECK(back[0].instance_id == "a");
    CHECK(back[1].reviewer_id == "r1");
    CHECK(back[2].reviewer_id == "r2");
  }

  TEST_CASE("export, import, export is byte-identical") {
    Gen g(71);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<Verdict> vs;
      const int n = g.integer(1, 30);
      std::set<std::pair<std::string, std::string>> used;
      for (int i = 0; i < n; ++i) {
        auto id = id_of(g.integer(0, 20));
        auto who = "r" + std::to_string(g.integer(1, 3));
        if (!used.insert({id, who}).second) continue;
        vs.push_back(random_verdict(g, id, who));
      }
      std::shuffle(vs.begin(), vs.end(), g.engine());
      const std::string first = export_verdicts(vs);
      const auto back = parse_verdicts(first);
      CHECK(export_verdicts(back) == first);
      CHECK(back.size() == vs.size());
    }
  }

  TEST_CASE("merge is last writer wins per instance and reviewer") {
    Verdict early = accept("a", "r1", "2026-03-01T10:00:00Z");
    Verdict late = reject("a", ErrorClass::kNotImplicit);
    late.timestamp = "2026-03-01T11:00:00Z";
    Verdict other = accept("a", "r2", "2026-01-01T00:00:00Z");
    auto merged = merge_verdicts({late, other, early});
    REQUIRE(merged.size() == 2);
    CHECK(merged[0] == late);
    CHECK(merged[1] == other);

    // equal timestamps: the later input wins
    Verdict a = accept("b", "r1", "t");
    Verdict b = reject("b", ErrorClass::kWrongLabel);
    b.timestamp = "t";
    CHECK(merge_verdicts({a, b})[0] == b);
    CHECK(merge_verdicts({b, a})[0] == a);
  }

  TEST_CASE("merge is idempotent") {
    Gen g(5);
    std::vector<Verdict> vs;
    for (int i = 0; i < 60; ++i) vs.push_back(random_verdict(g, id_of(g.integer(0, 9)), "r" + std::to_string(g.integer(1, 2))));
    auto once = merge_verdicts(vs);
    CHECK(merge_verdicts(once) == once);
    CHECK(export_verdicts(merge_verdicts(parse_verdicts(export_verdicts(once)))) == export_verdicts(once));
  }

  TEST_CASE("disagreeing reviewers need adjudication and are held back") {
    auto reviews = resolve(merge_verdicts({accept("a", "r1"), reject("a", ErrorClass::kNotImplicit, "r2"),
                                           accept("b", "r1"), accept("b", "r2")}));
    REQUIRE(reviews.size() == 2);
    CHECK(reviews[0].state == ReleaseState::kNeedsAdjudication);
    CHECK_FALSE(reviews[0].resolved.has_value());
    CHECK(reviews[0].reviewers == std::vector<std::string>{"r1", "r2"});
    CHECK(reviews[1].state == ReleaseState::kRetained);
    CHECK(release_state_name(reviews[0].state) == "needs_adjudication");

    dataset::DatasetManifest m;
    for (auto id : {"a", "b", "c"}) {
      dataset::ManifestEntry e;
      e.instance_id = id;
      m.instances.push_back(e);
    }
    auto rel = release_manifest(m, reviews);
    REQUIRE(rel.instances.size() == 2);
    CHECK(rel.instances[0].instance_id == "b");
    CHECK(rel.instances[1].instance_id == "c");  // unreviewed instances stay
    CHECK(error_report(reviews).needs_adjudication == 1);
  }

  TEST_CASE("fix with different spans is a disagreement") {
    Verdict a = fix("a", ErrorClass::kEarlyCut, "r1");
    Verdict b = fix("a", ErrorClass::kEarlyCut, "r2");
    CHECK(resolve({a, b})[0].state == ReleaseState::kRetained);
    b.corrected_spans->arg2.end += 1;
    CHECK(resolve({a, b})[0].state == ReleaseState::kNeedsAdjudication);
  }

  TEST_CASE("100 verdicts with 6 segmentation errors and 2 not-implicit rejects") {
    std::vector<Verdict> vs;
    for (int i = 0; i < 100; ++i) {
      const std::string id = id_of(i);
      if (i < 4) vs.push_back(fix(id, ErrorClass::kExtraneousContent));
      else if (i < 6) vs.push_back(fix(id, ErrorClass::kEarlyCut));
      else if (i < 8) vs.push_back(reject(id, ErrorClass::kNotImplicit));
      else vs.push_back(accept(id));
    }
    const auto reviews = resolve(merge_verdicts(parse_verdicts(export_verdicts(vs))));
    const auto r = error_report(reviews);
    CHECK(r.reviewed == 100);
    CHECK(r.segmentation_errors == 6);
    CHECK(r.extraneous_content == 4);
    CHECK(r.early_cut == 2);
    CHECK(r.not_implicit == 2);
    CHECK(r.segmentation_rate() == 0.06);
    CHECK(r.not_implicit_rate() == 0.02);
    CHECK(r.excluded == 2);
    CHECK(r.to_json()["segmentation_rate"].get<double>() == 0.06);

    const auto m = manifest_of(100);
    const auto rel = release_manifest(m, reviews);
    CHECK(rel.instances.size() == 98);
    std::set<std::string> kept;
    for (const auto &e : rel.instances) kept.insert(e.instance_id);
    CHECK_FALSE(kept.count(id_of(6)));
    CHECK_FALSE(kept.count(id_of(7)));
    CHECK(kept.count(id_of(0)));  // fixed instances are retained
    // mined instances are untouched
    for (const auto &e : rel.instances)
      CHECK(e == *std::find_if(m.instances.begin(), m.instances.end(),
                               [&](const auto &x) { return x.instance_id == e.instance_id; }));
  }

  TEST_CASE("report equals direct counting over single-reviewer verdicts") {
    Gen g(99);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<Verdict> vs;
      const int n = g.integer(1, 80);
      for (int i = 0; i < n; ++i) vs.push_back(random_verdict(g, id_of(i), "solo"));
      int seg = 0, ni = 0, wl = 0, rej = 0;
      for (const auto &v : vs) {
        if (v.decision == Decision::kReject) ++rej;
        if (!v.error_class) continue;
        seg += is_segmentation_error(*v.error_class);
        ni += *v.error_class == ErrorClass::kNotImplicit;
        wl += *v.error_class == ErrorClass::kWrongLabel;
      }
      const auto r = error_report(resolve(merge_verdicts(vs)));
      CHECK(r.reviewed == n);
      CHECK(r.segmentation_errors == seg);
      CHECK(r.not_implicit == ni);
      CHECK(r.wrong_label == wl);
      CHECK(r.excluded == rej);
      CHECK(r.needs_adjudication == 0);
    }
  }
}
