// include/idr/audio/clip.h

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

#ifndef IDR_AUDIO_CLIP_H_
#define IDR_AUDIO_CLIP_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "idr/audio/wav.h"

namespace idr::audio {

// Seconds.
struct TimeSpan {
  double start = 0.0;
  double end = 0.0;
  double duration() const { return end - start; }
  bool operator==(const TimeSpan &) const = default;
};

struct AudioClip {
  std::vector<float> samples;  // mono, [-1, 1)
  int sample_rate = kCanonicalRate;
  std::string talk_id;
  TimeSpan origin;  // position in the talk audio

  double duration() const { return static_cast<double>(samples.size()) / sample_rate; }
};

// Whole mono file as a clip starting at 0.
AudioClip whole_clip(const PcmAudio &audio, std::string talk_id);

// Sample-accurate slice, span relative to the start of `source`. First
// sample round(start * rate), length round((end - start) * rate). Throws
// RangeError when the span leaves the source by more than one sample.
AudioClip cut_audio(const AudioClip &source, const TimeSpan &span);
AudioClip cut_audio(const std::filesystem::path &wav, const TimeSpan &span,
                    const std::string &talk_id = "");

// "silent" or "clipping" for clips QC should look at.
std::optional<std::string> energy_anomaly(const AudioClip &clip);

}  // namespace idr::audio

#endif  // IDR_AUDIO_CLIP_H_
