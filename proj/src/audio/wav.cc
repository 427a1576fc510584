// src/audio/wav.cc

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

#include "idr/audio/wav.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "idr/base/container.h"
#include "idr/base/error.h"
#include "idr/base/io.h"

namespace idr::audio {

PcmAudio decode_wav(std::string_view bytes) {
  ByteReader r(bytes);
  if (r.take(4) != "RIFF") throw ParseError("not a RIFF file");
  r.u32();
  if (r.take(4) != "WAVE") throw ParseError("not a WAVE file");
  PcmAudio out;
  bool have_fmt = false;
  while (r.remaining() >= 8) {
    auto id = r.take(4);
    std::uint32_t size = r.u32();
    if (size > r.remaining()) throw ParseError("truncated '" + std::string(id) + "' chunk");
    std::size_t body = r.position();
    if (id == "fmt ") {
      if (size < 16) throw ParseError("short fmt chunk");
      std::uint16_t format = r.u16();
      out.channels = r.u16();
      out.sample_rate = static_cast<int>(r.u32());
      r.u32();
      r.u16();
      std::uint16_t bits = r.u16();
      // WAVE_FORMAT_EXTENSIBLE keeps PCM in its subformat
      if ((format != 1 && format != 0xFFFE) || bits != 16)
        throw ParseError("only PCM 16-bit WAV is supported");
      if (out.channels < 1 || out.sample_rate <= 0) throw ParseError("bad channel count or rate");
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt) throw ParseError("data chunk before fmt chunk");
      std::size_t n = size / 2;
      n -= n % static_cast<std::size_t>(out.channels);
      out.samples.resize(n);
      for (std::size_t i = 0; i < n; ++i) out.samples[i] = static_cast<std::int16_t>(r.u16());
      return out;
    }
    r.seek(std::min(body + size + (size & 1), bytes.size()));
  }
  throw ParseError("no data chunk");
}

std::string encode_wav(const PcmAudio &audio) {
  std::string out = "RIFF";
  const std::uint32_t data_bytes = static_cast<std::uint32_t>(audio.samples.size() * 2);
  put_u32(out, 36 + data_bytes);
  out += "WAVEfmt ";
  put_u32(out, 16);
  auto put_u16 = [&](std::uint16_t v) {
    out += static_cast<char>(v & 0xFF);
    out += static_cast<char>(v >> 8);
  };
  put_u16(1);
  put_u16(static_cast<std::uint16_t>(audio.channels));
  put_u32(out, static_cast<std::uint32_t>(audio.sample_rate));
  put_u32(out, static_cast<std::uint32_t>(audio.sample_rate * audio.channels * 2));
  put_u16(static_cast<std::uint16_t>(audio.channels * 2));
  put_u16(16);
  out += "data";
  put_u32(out, data_bytes);
  for (auto s : audio.samples) put_u16(static_cast<std::uint16_t>(s));
  return out;
}

PcmAudio read_wav(const std::filesystem::path &path) { return decode_wav(read_file(path)); }

void write_wav(const std::filesystem::path &path, const PcmAudio &audio) {
  write_file(path, encode_wav(audio));
}

std::vector<float> to_mono_float(const PcmAudio &audio) {
  const std::size_t ch = static_cast<std::size_t>(audio.channels);
  std::vector<float> out(audio.frames());
  for (std::size_t f = 0; f < out.size(); ++f) {
    double acc = 0.0;
    for (std::size_t c = 0; c < ch; ++c) acc += audio.samples[f * ch + c];
    out[f] = static_cast<float>(acc / static_cast<double>(ch) / 32768.0);
  }
  return out;
}

std::vector<std::int16_t> to_pcm16(const std::vector<float> &samples) {
  std::vector<std::int16_t> out(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double v = std::round(static_cast<double>(samples[i]) * 32768.0);
    out[i] = static_cast<std::int16_t>(std::clamp(v, -32768.0, 32767.0));
  }
  return out;
}

std::vector<float> resample(const std::vector<float> &in, int from_rate, int to_rate) {
  if (from_rate <= 0 || to_rate <= 0) throw ContractError("sample rates must be positive");
  if (from_rate == to_rate || in.empty()) return in;
  const double ratio = static_cast<double>(to_rate) / from_rate;
  const double cutoff = std::min(1.0, ratio);  // relative to input Nyquist
  constexpr int kZeroCrossings = 16;
  const double half_width = kZeroCrossings / cutoff;  // in input samples
  const std::size_t n_out =
      static_cast<std::size_t>(std::llround(static_cast<double>(in.size()) * ratio));
  std::vector<float> out(n_out);
  const long n_in = static_cast<long>(in.size());
  for (std::size_t k = 0; k < n_out; ++k) {
    const double t = static_cast<double>(k) / ratio;
    const long lo = std::max(0L, static_cast<long>(std::ceil(t - half_width)));
    const long hi = std::min(n_in - 1, static_cast<long>(std::floor(t + half_width)));
    double acc = 0.0;
    for (long i = lo; i <= hi; ++i) {
      const double x = static_cast<double>(i) - t;
      const double arg = M_PI * x * cutoff;
      const double sinc = std::abs(arg) < 1e-12 ? 1.0 : std::sin(arg) / arg;
      const double window = 0.5 + 0.5 * std::cos(M_PI * x / half_width);
      acc += in[static_cast<std::size_t>(i)] * cutoff * sinc * window;
    }
    out[k] = static_cast<float>(acc);
  }
  return out;
}

PcmAudio ingest_audio(const PcmAudio &audio, int target_rate) {
  PcmAudio out;
  out.sample_rate = target_rate;
  out.channels = 1;
  out.samples = to_pcm16(resample(to_mono_float(audio), audio.sample_rate, target_rate));
  return out;
}

}  // namespace idr::audio
