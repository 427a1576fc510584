// include/idr/audio/wav.h

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

#ifndef IDR_AUDIO_WAV_H_
#define IDR_AUDIO_WAV_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace idr::audio {

inline constexpr int kCanonicalRate = 16000;

// 16-bit PCM, interleaved when channels > 1.
struct PcmAudio {
  int sample_rate = kCanonicalRate;
  int channels = 1;
  std::vector<std::int16_t> samples;

  std::size_t frames() const { return channels > 0 ? samples.size() / static_cast<std::size_t>(channels) : 0; }
  double duration() const { return static_cast<double>(frames()) / sample_rate; }
};

// RIFF/WAVE with a PCM 16-bit fmt chunk; unknown chunks are skipped.
// Throws ParseError on anything else.
PcmAudio decode_wav(std::string_view bytes);
std::string encode_wav(const PcmAudio &audio);
PcmAudio read_wav(const std::filesystem::path &path);
void write_wav(const std::filesystem::path &path, const PcmAudio &audio);

// Channel average scaled to [-1, 1).
std::vector<float> to_mono_float(const PcmAudio &audio);
// Rounds and saturates.
std::vector<std::int16_t> to_pcm16(const std::vector<float> &samples);

// Band-limited resampling with a Hann-windowed sinc kernel.
std::vector<float> resample(const std::vector<float> &in, int from_rate, int to_rate);

// Mono, canonical rate.
PcmAudio ingest_audio(const PcmAudio &audio, int target_rate = kCanonicalRate);

}  // namespace idr::audio

#endif  // IDR_AUDIO_WAV_H_
