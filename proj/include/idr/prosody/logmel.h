// include/idr/prosody/logmel.h

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

#ifndef IDR_PROSODY_LOGMEL_H_
#define IDR_PROSODY_LOGMEL_H_

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "idr/audio/clip.h"

namespace idr::prosody {

struct MelConfig {
  int sample_rate = 16000;
  std::size_t window = 400;  // 25 ms
  std::size_t hop = 160;     // 10 ms
  std::size_t n_fft = 512;
  int n_mels = 128;
  double f_min = 0.0;
  double f_max = 8000.0;
  double floor = 1e-10;
};

// HTK mel scale.
double hz_to_mel(double hz);
double mel_to_hz(double mel);

// n_mels x (n_fft/2 + 1). Each triangle is integrated over every FFT
// bin's frequency interval, so narrow low-frequency filters still touch
// a bin, and each row is scaled to sum to 1.
Eigen::MatrixXd mel_filterbank(const MelConfig &cfg = {});

struct LogMel {
  Eigen::MatrixXd frames;           // n_mels x T
  std::vector<std::uint8_t> mask;   // length T, 1 = real frame
};

// Hann-windowed power spectrum through the filterbank, natural log with
// the floor. Clips shorter than one window are zero-padded to one frame.
LogMel compute_logmel(const audio::AudioClip &clip, const MelConfig &cfg = {});

}  // namespace idr::prosody

#endif  // IDR_PROSODY_LOGMEL_H_
