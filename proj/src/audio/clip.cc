// src/audio/clip.cc

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

#include "idr/audio/clip.h"

#include <cmath>

#include "idr/base/error.h"

namespace idr::audio {

AudioClip whole_clip(const PcmAudio &audio, std::string talk_id) {
  AudioClip c;
  c.samples = to_mono_float(audio);
  c.sample_rate = audio.sample_rate;
  c.talk_id = std::move(talk_id);
  c.origin = {0.0, c.duration()};
  return c;
}

AudioClip cut_audio(const AudioClip &source, const TimeSpan &span) {
  if (!(span.end > span.start)) throw RangeError("empty or reversed time span");
  const double rate = source.sample_rate;
  const long long n = static_cast<long long>(source.samples.size());
  long long first = std::llround(span.start * rate);
  long long count = std::llround(span.duration() * rate);
  if (first < 0 || first + count > n + 1)
    throw RangeError("span [" + std::to_string(span.start) + ", " + std::to_string(span.end) +
                     "] outside audio of " + std::to_string(source.duration()) + " s");
  // one sample of rounding slack at the end
  if (first + count > n) count = n - first;
  if (count <= 0) throw RangeError("span shorter than one sample");
  AudioClip out;
  out.samples.assign(source.samples.begin() + first, source.samples.begin() + first + count);
  out.sample_rate = source.sample_rate;
  out.talk_id = source.talk_id;
  out.origin = {source.origin.start + span.start, source.origin.start + span.end};
  return out;
}

AudioClip cut_audio(const std::filesystem::path &wav, const TimeSpan &span,
                    const std::string &talk_id) {
  return cut_audio(whole_clip(read_wav(wav), talk_id), span);
}

std::optional<std::string> energy_anomaly(const AudioClip &clip) {
  if (clip.samples.empty()) return "silent";
  double sq = 0.0;
  std::size_t clipped = 0;
  for (float s : clip.samples) {
    sq += static_cast<double>(s) * s;
    if (std::abs(s) >= 0.999f) ++clipped;
  }
  double rms = std::sqrt(sq / static_cast<double>(clip.samples.size()));
  if (rms < 1e-4) return "silent";
  if (static_cast<double>(clipped) > 0.01 * static_cast<double>(clip.samples.size())) return "clipping";
  return std::nullopt;
}

}  // namespace idr::audio
