// src/prosody/cache.cc

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

#include "idr/prosody/cache.h"

#include "idr/base/container.h"
#include "idr/base/error.h"
#include "idr/base/io.h"

namespace idr::prosody {

std::string encode_feature_blob(const Eigen::MatrixXd &m) {
  std::string out;
  out.reserve(8 + static_cast<std::size_t>(m.size()) * 4);
  put_u32(out, static_cast<std::uint32_t>(m.rows()));
  put_u32(out, static_cast<std::uint32_t>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) put_f32(out, static_cast<float>(m(r, c)));
  return out;
}

Eigen::MatrixXd decode_feature_blob(std::string_view bytes) {
  ByteReader r(bytes);
  const std::uint32_t rows = r.u32(), cols = r.u32();
  if (static_cast<std::uint64_t>(rows) * cols * 4 != r.remaining())
    throw ParseError("feature blob size does not match its header");
  Eigen::MatrixXd m(rows, cols);
  for (std::uint32_t i = 0; i < rows; ++i)
    for (std::uint32_t j = 0; j < cols; ++j) m(i, j) = r.f32();
  return m;
}

std::filesystem::path feature_cache_path(const std::filesystem::path &dir, std::string_view instance_id,
                                         std::string_view kind, std::string_view version) {
  return dir / (std::string(instance_id) + "." + std::string(kind) + "." + std::string(version) + ".bin");
}

void save_features(const std::filesystem::path &path, const Eigen::MatrixXd &m) {
  write_file(path, encode_feature_blob(m));
}

Eigen::MatrixXd load_features(const std::filesystem::path &path) {
  return decode_feature_blob(read_file(path));
}

}  // namespace idr::prosody
