// include/idr/prosody/pitch.h

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

#ifndef IDR_PROSODY_PITCH_H_
#define IDR_PROSODY_PITCH_H_

#include <cstddef>
#include <vector>

namespace idr::prosody {

// 25 ms frames every 10 ms at 16 kHz; frame k covers samples
// [k * hop, k * hop + length).
struct FrameSpec {
  int sample_rate = 16000;
  std::size_t length = 400;
  std::size_t hop = 160;

  // 1 + floor((n - length) / hop); one frame for shorter signals.
  std::size_t count(std::size_t n) const;
  double center_seconds(std::size_t k) const;
};

struct PitchOptions {
  double min_f0 = 60.0;
  double max_f0 = 500.0;
  double threshold = 0.45;       // cumulative mean normalized difference
  double energy_floor = 1e-3;    // frame RMS below this is unvoiced
};

struct PitchFrame {
  double f0 = 0.0;  // Hz, 0 when unvoiced
  bool voiced = false;
  double rms = 0.0;
};

// YIN-style estimate for one frame of samples; the buffer must hold at
// least two periods of min_f0.
PitchFrame yin_frame(const float *x, std::size_t n, int sample_rate, const PitchOptions &opt);

// Frame-synchronous track (frames per FrameSpec). The pitch window is
// centred on each frame and wide enough for min_f0; a median-3 filter
// then smooths runs of voiced frames.
std::vector<PitchFrame> track_pitch(const std::vector<float> &x, const FrameSpec &frames = {},
                                    const PitchOptions &opt = {});

}  // namespace idr::prosody

#endif  // IDR_PROSODY_PITCH_H_
