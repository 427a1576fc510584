// include/idr/base/container.h

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

#ifndef IDR_BASE_CONTAINER_H_
#define IDR_BASE_CONTAINER_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace idr {

// Row-major float64 tensor.
struct Tensor {
  std::vector<std::size_t> shape;
  std::vector<double> data;

  std::size_t numel() const;
  bool operator==(const Tensor &) const = default;
};

// Versioned binary container shared by fusion checkpoints and baseline
// models. Layout, all little-endian:
//   magic "IDRCKPT\0" | u32 version | u32 kind_len | kind bytes
//   | u32 header_len | header JSON bytes | u32 tensor_count
//   | per tensor: u32 name_len | name | u32 rank | u64 dims[rank] | f64 data
struct Container {
  static constexpr std::uint32_t kVersion = 1;

  std::string kind;
  nlohmann::json header = nlohmann::json::object();
  std::vector<std::pair<std::string, Tensor>> tensors;

  const Tensor &at(std::string_view name) const;
  void add(std::string name, Tensor t);

  std::string serialize() const;
  static Container deserialize(std::string_view bytes);

  void save(const std::filesystem::path &path) const;
  static Container load(const std::filesystem::path &path);
};

// Little-endian scalar helpers used by the binary formats.
void put_u32(std::string &out, std::uint32_t v);
void put_u64(std::string &out, std::uint64_t v);
void put_f64(std::string &out, double v);
void put_f32(std::string &out, float v);

class ByteReader {
 public:
  explicit ByteReader(std::string_view bytes) : bytes_(bytes) {}
  std::uint16_t u16();
  std::uint32_t u32();
  std::uint64_t u64();
  double f64();
  float f32();
  std::string_view take(std::size_t n);
  std::size_t remaining() const { return bytes_.size() - pos_; }
  std::size_t position() const { return pos_; }
  void seek(std::size_t pos);

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace idr

#endif  // IDR_BASE_CONTAINER_H_
