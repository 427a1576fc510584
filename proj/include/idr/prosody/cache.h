// include/idr/prosody/cache.h

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

#ifndef IDR_PROSODY_CACHE_H_
#define IDR_PROSODY_CACHE_H_

#include <filesystem>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace idr::prosody {

// Bumped whenever feature values change; part of every cache key.
inline constexpr std::string_view kProsodyFeatureVersion = "prosody9-talkz-v1";
inline constexpr std::string_view kLogMelFeatureVersion = "logmel128-v1";

// Blob: u32 rows | u32 cols | rows*cols float32, row-major, little-endian.
std::string encode_feature_blob(const Eigen::MatrixXd &m);
Eigen::MatrixXd decode_feature_blob(std::string_view bytes);

// <dir>/<instance_id>.<kind>.<version>.bin
std::filesystem::path feature_cache_path(const std::filesystem::path &dir, std::string_view instance_id,
                                         std::string_view kind, std::string_view version);

void save_features(const std::filesystem::path &path, const Eigen::MatrixXd &m);
Eigen::MatrixXd load_features(const std::filesystem::path &path);

}  // namespace idr::prosody

#endif  // IDR_PROSODY_CACHE_H_
