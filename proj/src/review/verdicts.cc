// src/review/verdicts.cc

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

#include "idr/review/verdicts.h"

#include <algorithm>
#include <set>
#include <tuple>

#include "idr/base/error.h"
#include "idr/base/text.h"

namespace idr::review {

namespace {

constexpr std::string_view kDecisions[] = {"accept", "reject", "fix"};
constexpr std::string_view kErrorClasses[] = {"extraneous_content", "early_cut", "not_implicit", "wrong_label"};

CharRange range_from_json(const nlohmann::json &j) {
  if (!j.is_array() || j.size() != 2) throw ValidationError("span must be [begin, end]");
  CharRange r{j[0].get<std::size_t>(), j[1].get<std::size_t>()};
  if (r.end < r.begin) throw ValidationError("span end before begin");
  return r;
}

bool by_key(const Verdict &a, const Verdict &b) {
  return std::tie(a.instance_id, a.reviewer_id) < std::tie(b.instance_id, b.reviewer_id);
}

bool same_judgement(const Verdict &a, const Verdict &b) {
  return a.decision == b.decision && a.error_class == b.error_class && a.corrected_spans == b.corrected_spans;
}

double rate(int n, int d) { return d == 0 ? 0.0 : static_cast<double>(n) / d; }

}  // namespace

std::string_view decision_name(Decision d) { return kDecisions[static_cast<int>(d)]; }

Decision parse_decision(std::string_view s) {
  for (int i = 0; i < 3; ++i)
    if (kDecisions[i] == s) return static_cast<Decision>(i);
  throw ValidationError("unknown decision '" + std::string(s) + "'");
}

std::string_view error_class_name(ErrorClass e) { return kErrorClasses[static_cast<int>(e)]; }

ErrorClass parse_error_class(std::string_view s) {
  for (int i = 0; i < 4; ++i)
    if (kErrorClasses[i] == s) return static_cast<ErrorClass>(i);
  throw ValidationError("unknown error class '" + std::string(s) + "'");
}

bool is_segmentation_error(ErrorClass e) { return e == ErrorClass::kExtraneousContent || e == ErrorClass::kEarlyCut; }

void validate(const Verdict &v) {
  if (v.instance_id.empty()) throw ValidationError("verdict without instance_id");
  if (v.reviewer_id.empty()) throw ValidationError("verdict without reviewer_id");
  if (v.decision == Decision::kFix && !v.corrected_spans) throw ValidationError("fix requires corrected_spans");
  if (v.decision == Decision::kReject && !v.error_class) throw ValidationError("reject requires error_class");
}

nlohmann::ordered_json to_json(const Verdict &v) {
  nlohmann::ordered_json j;
  j["instance_id"] = v.instance_id;
  j["decision"] = std::string(decision_name(v.decision));
  j["error_class"] = v.error_class ? nlohmann::ordered_json(error_class_name(*v.error_class)) : nlohmann::ordered_json(nullptr);
  if (v.corrected_spans) {
    const auto &c = *v.corrected_spans;
    j["corrected_spans"] = {{"arg1", {c.arg1.begin, c.arg1.end}}, {"arg2", {c.arg2.begin, c.arg2.end}}};
  } else {
    j["corrected_spans"] = nullptr;
  }
  j["reviewer_id"] = v.reviewer_id;
  j["timestamp"] = v.timestamp;
  return j;
}

Verdict verdict_from_json(const nlohmann::json &j) {
  Verdict v;
  try {
    if (!j.is_object()) throw ValidationError("verdict must be an object");
    v.instance_id = j.at("instance_id").get<std::string>();
    v.decision = parse_decision(j.at("decision").get<std::string>());
    if (j.contains("error_class") && !j["error_class"].is_null())
      v.error_class = parse_error_class(j["error_class"].get<std::string>());
    if (j.contains("corrected_spans") && !j["corrected_spans"].is_null()) {
      const auto &c = j["corrected_spans"];
      v.corrected_spans = CorrectedSpans{range_from_json(c.at("arg1")), range_from_json(c.at("arg2"))};
    }
    v.reviewer_id = j.at("reviewer_id").get<std::string>();
    v.timestamp = j.value("timestamp", "");
  } catch (const nlohmann::json::exception &e) {
    throw ValidationError(std::string("verdict: ") + e.what());
  }
  validate(v);
  return v;
}

std::vector<Verdict> parse_verdicts(std::string_view jsonl) {
  std::vector<Verdict> out;
  std::size_t line_no = 0, pos = 0;
  while (pos <= jsonl.size()) {
    std::size_t nl = jsonl.find('\n', pos);
    if (nl == std::string_view::npos) nl = jsonl.size();
    ++line_no;
    std::string_view line = trim(jsonl.substr(pos, nl - pos));
    pos = nl + 1;
    if (line.empty()) continue;
    try {
      out.push_back(verdict_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::parse_error &e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
    } catch (const ValidationError &e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return out;
}

std::string export_verdicts(std::vector<Verdict> verdicts) {
  if (verdicts.empty()) throw ValidationError("empty review session: no verdicts to export");
  std::stable_sort(verdicts.begin(), verdicts.end(), by_key);
  std::string out;
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    validate(verdicts[i]);
    if (i > 0 && !by_key(verdicts[i - 1], verdicts[i]))
      throw ValidationError("two verdicts from " + verdicts[i].reviewer_id + " on " + verdicts[i].instance_id);
    out += to_json(verdicts[i]).dump();
    out += '\n';
  }
  return out;
}

std::vector<Verdict> merge_verdicts(const std::vector<Verdict> &verdicts) {
  std::map<std::pair<std::string, std::string>, const Verdict *> latest;
  for (const auto &v : verdicts) {
    const Verdict *&slot = latest[{v.instance_id, v.reviewer_id}];
    if (!slot || slot->timestamp <= v.timestamp) slot = &v;
  }
  std::vector<Verdict> out;
  for (const auto &[key, v] : latest) out.push_back(*v);
  return out;
}

std::string_view release_state_name(ReleaseState s) {
  switch (s) {
    case ReleaseState::kRetained: return "retained";
    case ReleaseState::kExcluded: return "excluded";
    case ReleaseState::kNeedsAdjudication: return "needs_adjudication";
  }
  return "retained";
}

std::vector<InstanceReview> resolve(const std::vector<Verdict> &merged) {
  std::map<std::string, std::vector<const Verdict *>> by_instance;
  for (const auto &v : merged) by_instance[v.instance_id].push_back(&v);
  std::vector<InstanceReview> out;
  for (const auto &[id, vs] : by_instance) {
    InstanceReview r;
    r.instance_id = id;
    std::set<std::string> reviewers;
    for (const auto *v : vs) reviewers.insert(v->reviewer_id);
    r.reviewers.assign(reviewers.begin(), reviewers.end());
    const bool agree = std::all_of(vs.begin(), vs.end(), [&](const Verdict *v) { return same_judgement(*v, *vs[0]); });
    if (!agree) {
      r.state = ReleaseState::kNeedsAdjudication;
    } else {
      r.resolved = *vs[0];
      r.state = vs[0]->decision == Decision::kReject ? ReleaseState::kExcluded : ReleaseState::kRetained;
    }
    out.push_back(std::move(r));
  }
  return out;
}

double ErrorReport::segmentation_rate() const { return rate(segmentation_errors, reviewed); }
double ErrorReport::not_implicit_rate() const { return rate(not_implicit, reviewed); }
double ErrorReport::wrong_label_rate() const { return rate(wrong_label, reviewed); }

nlohmann::ordered_json ErrorReport::to_json() const {
  nlohmann::ordered_json j;
  j["reviewed"] = reviewed;
  j["segmentation_errors"] = segmentation_errors;
  j["extraneous_content"] = extraneous_content;
  j["early_cut"] = early_cut;
  j["not_implicit"] = not_implicit;
  j["wrong_label"] = wrong_label;
  j["segmentation_rate"] = segmentation_rate();
  j["not_implicit_rate"] = not_implicit_rate();
  j["wrong_label_rate"] = wrong_label_rate();
  j["needs_adjudication"] = needs_adjudication;
  j["excluded"] = excluded;
  return j;
}

ErrorReport error_report(const std::vector<InstanceReview> &reviews) {
  ErrorReport r;
  for (const auto &rev : reviews) {
    ++r.reviewed;
    if (rev.state == ReleaseState::kNeedsAdjudication) ++r.needs_adjudication;
    if (rev.state == ReleaseState::kExcluded) ++r.excluded;
    if (!rev.resolved || !rev.resolved->error_class) continue;
    switch (*rev.resolved->error_class) {
      case ErrorClass::kExtraneousContent: ++r.extraneous_content; break;
      case ErrorClass::kEarlyCut: ++r.early_cut; break;
      case ErrorClass::kNotImplicit: ++r.not_implicit; break;
      case ErrorClass::kWrongLabel: ++r.wrong_label; break;
    }
  }
  r.segmentation_errors = r.extraneous_content + r.early_cut;
  return r;
}

dataset::DatasetManifest release_manifest(const dataset::DatasetManifest &m,
                                          const std::vector<InstanceReview> &reviews) {
  std::set<std::string> held;
  for (const auto &r : reviews)
    if (r.state != ReleaseState::kRetained) held.insert(r.instance_id);
  dataset::DatasetManifest out;
  out.version = m.version;
  out.provenance = m.provenance;
  for (const auto &e : m.instances)
    if (!held.count(e.instance_id)) out.instances.push_back(e);
  return out;
}

}  // namespace idr::review
