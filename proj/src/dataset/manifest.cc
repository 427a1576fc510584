// src/dataset/manifest.cc

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

#include "idr/dataset/manifest.h"

#include <algorithm>

#include "idr/base/error.h"
#include "idr/base/hash.h"
#include "idr/base/io.h"

namespace idr::dataset {

std::string_view split_name(Split s) {
  switch (s) {
    case Split::kTrain: return "train";
    case Split::kValidation: return "validation";
    case Split::kTest: return "test";
    case Split::kUnassigned: return "unassigned";
  }
  return "";
}

Split parse_split(std::string_view name) {
  for (Split s : kAllSplits)
    if (split_name(s) == name) return s;
  throw ValidationError("unknown split '" + std::string(name) + "'");
}

nlohmann::ordered_json to_json(const ManifestEntry &e) {
  nlohmann::ordered_json j;
  j["instance_id"] = e.instance_id;
  j["talk_id"] = e.talk_id;
  j["language"] = e.language;
  j["label"] = std::string(corpus::label_name(e.label));
  j["arg1_text"] = e.arg1_text;
  j["arg2_text"] = e.arg2_text;
  j["arg1_clip"] = e.arg1_clip;
  j["arg2_clip"] = e.arg2_clip;
  j["split"] = std::string(split_name(e.split));
  j["sentence_index"] = e.sentence_index;
  j["inter_sentential"] = e.inter_sentential;
  j["witness_language"] = e.witness_language;
  return j;
}

ManifestEntry entry_from_json(const nlohmann::json &j) {
  ManifestEntry e;
  try {
    e.instance_id = j.at("instance_id").get<std::string>();
    e.talk_id = j.at("talk_id").get<std::string>();
    e.language = j.at("language").get<std::string>();
    e.label = corpus::parse_label(j.at("label").get<std::string>());
    e.arg1_text = j.value("arg1_text", "");
    e.arg2_text = j.value("arg2_text", "");
    e.arg1_clip = j.value("arg1_clip", "");
    e.arg2_clip = j.value("arg2_clip", "");
    e.split = parse_split(j.value("split", "unassigned"));
    e.sentence_index = j.value("sentence_index", std::int64_t{-1});
    e.inter_sentential = j.value("inter_sentential", false);
    e.witness_language = j.value("witness_language", "");
  } catch (const nlohmann::json::exception &ex) {
    throw ValidationError(std::string("manifest entry: ") + ex.what());
  } catch (const LookupError &ex) {
    throw ValidationError(std::string("manifest entry: ") + ex.what());
  }
  if (e.instance_id.empty() || e.talk_id.empty()) throw ValidationError("manifest entry without id");
  return e;
}

void DatasetManifest::normalize() {
  std::sort(instances.begin(), instances.end(),
            [](const ManifestEntry &a, const ManifestEntry &b) { return a.instance_id < b.instance_id; });
  for (std::size_t i = 1; i < instances.size(); ++i)
    if (instances[i].instance_id == instances[i - 1].instance_id)
      throw ValidationError("duplicate instance_id " + instances[i].instance_id);
}

std::string DatasetManifest::to_jsonl() const {
  DatasetManifest copy = *this;
  copy.normalize();
  std::string out;
  for (const auto &e : copy.instances) out += to_json(e).dump() + "\n";
  return out;
}

std::string DatasetManifest::content_hash() const { return sha256_hex(to_jsonl()); }

DatasetManifest DatasetManifest::from_jsonl(std::string_view body) {
  DatasetManifest m;
  std::size_t line = 0;
  for (const auto &row : parse_jsonl(body)) {
    ++line;
    try {
      m.instances.push_back(entry_from_json(row));
    } catch (const ValidationError &e) {
      throw ParseError(e.what(), line);
    }
  }
  m.normalize();
  return m;
}

void DatasetManifest::save(const std::filesystem::path &path) const {
  const std::string body = to_jsonl();
  write_file(path, body);
  nlohmann::ordered_json meta;
  meta["version"] = version;
  meta["provenance"] = provenance;
  meta["count"] = instances.size();
  meta["sha256"] = sha256_hex(body);
  write_file(path.string() + ".meta.json", meta.dump(2) + "\n");
}

DatasetManifest DatasetManifest::load(const std::filesystem::path &path) {
  DatasetManifest m = from_jsonl(read_file(path));
  const std::filesystem::path meta_path = path.string() + ".meta.json";
  if (std::filesystem::exists(meta_path)) {
    const auto meta = nlohmann::json::parse(read_file(meta_path));
    m.version = meta.value("version", m.version);
    m.provenance = meta.value("provenance", "");
  }
  return m;
}

void check_clips(const DatasetManifest &m, const std::filesystem::path &root) {
  for (const auto &e : m.instances)
    for (const auto *clip : {&e.arg1_clip, &e.arg2_clip})
      if (clip->empty() || !std::filesystem::exists(root / *clip))
        throw ValidationError(e.instance_id + ": clip '" + *clip + "' not found");
}

}  // namespace idr::dataset
