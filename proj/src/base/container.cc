// src/base/container.cc

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

#include "idr/base/container.h"

#include <bit>
#include <cstring>

#include "idr/base/error.h"
#include "idr/base/io.h"

namespace idr {
namespace {

constexpr char kMagic[8] = {'I', 'D', 'R', 'C', 'K', 'P', 'T', '\0'};

template <typename T>
void put_le(std::string &out, T v) {
  static_assert(std::is_unsigned_v<T>);
  for (std::size_t i = 0; i < sizeof(T); ++i)
    out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

}  // namespace

std::size_t Tensor::numel() const {
  std::size_t n = 1;
  for (auto d : shape) n *= d;
  return n;
}

void put_u32(std::string &out, std::uint32_t v) { put_le(out, v); }
void put_u64(std::string &out, std::uint64_t v) { put_le(out, v); }
void put_f64(std::string &out, double v) {
  put_le(out, std::bit_cast<std::uint64_t>(v));
}
void put_f32(std::string &out, float v) {
  put_le(out, std::bit_cast<std::uint32_t>(v));
}

std::string_view ByteReader::take(std::size_t n) {
  if (n > remaining()) throw ParseError("truncated binary data");
  auto s = bytes_.substr(pos_, n);
  pos_ += n;
  return s;
}

void ByteReader::seek(std::size_t pos) {
  if (pos > bytes_.size()) throw ParseError("seek past end of binary data");
  pos_ = pos;
}

std::uint16_t ByteReader::u16() {
  auto s = take(2);
  return static_cast<std::uint16_t>(static_cast<unsigned char>(s[0]) |
                                    (static_cast<unsigned char>(s[1]) << 8));
}

std::uint32_t ByteReader::u32() {
  auto s = take(4);
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(s[i]);
  return v;
}

std::uint64_t ByteReader::u64() {
  auto s = take(8);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(s[i]);
  return v;
}

double ByteReader::f64() { return std::bit_cast<double>(u64()); }
float ByteReader::f32() { return std::bit_cast<float>(u32()); }

const Tensor &Container::at(std::string_view name) const {
  for (const auto &[n, t] : tensors)
    if (n == name) return t;
  throw LookupError("container has no tensor '" + std::string(name) + "'");
}

void Container::add(std::string name, Tensor t) {
  if (t.data.size() != t.numel())
    throw ContractError("tensor '" + name + "' data does not match its shape");
  tensors.emplace_back(std::move(name), std::move(t));
}

std::string Container::serialize() const {
  std::string out(kMagic, sizeof(kMagic));
  put_u32(out, kVersion);
  put_u32(out, static_cast<std::uint32_t>(kind.size()));
  out += kind;
  std::string h = header.dump();
  put_u32(out, static_cast<std::uint32_t>(h.size()));
  out += h;
  put_u32(out, static_cast<std::uint32_t>(tensors.size()));
  for (const auto &[name, t] : tensors) {
    put_u32(out, static_cast<std::uint32_t>(name.size()));
    out += name;
    put_u32(out, static_cast<std::uint32_t>(t.shape.size()));
    for (auto d : t.shape) put_u64(out, d);
    for (double v : t.data) put_f64(out, v);
  }
  return out;
}

Container Container::deserialize(std::string_view bytes) {
  ByteReader r(bytes);
  if (std::memcmp(r.take(8).data(), kMagic, 8) != 0)
    throw ParseError("not a model container (bad magic)");
  std::uint32_t version = r.u32();
  if (version != kVersion)
    throw ParseError("unsupported container version " + std::to_string(version));
  Container c;
  c.kind = std::string(r.take(r.u32()));
  try {
    c.header = nlohmann::json::parse(r.take(r.u32()));
  } catch (const nlohmann::json::parse_error &e) {
    throw ParseError(std::string("container header: ") + e.what());
  }
  std::uint32_t count = r.u32();
  for (std::uint32_t i = 0; i < count; ++i) {
    std::string name(r.take(r.u32()));
    Tensor t;
    std::uint32_t rank = r.u32();
    for (std::uint32_t k = 0; k < rank; ++k) t.shape.push_back(r.u64());
    std::size_t n = t.numel();
    if (n > r.remaining() / 8) throw ParseError("truncated tensor '" + name + "'");
    t.data.resize(n);
    for (auto &v : t.data) v = r.f64();
    c.tensors.emplace_back(std::move(name), std::move(t));
  }
  if (r.remaining() != 0) throw ParseError("trailing bytes after container");
  return c;
}

void Container::save(const std::filesystem::path &path) const {
  write_file(path, serialize());
}

Container Container::load(const std::filesystem::path &path) {
  return deserialize(read_file(path));
}

}  // namespace idr
