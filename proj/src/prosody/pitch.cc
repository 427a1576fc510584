// src/prosody/pitch.cc

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

#include "idr/prosody/pitch.h"

#include <algorithm>
#include <cmath>

namespace idr::prosody {

std::size_t FrameSpec::count(std::size_t n) const {
  if (n < length) return 1;
  return 1 + (n - length) / hop;
}

double FrameSpec::center_seconds(std::size_t k) const {
  return (static_cast<double>(k * hop) + static_cast<double>(length) / 2.0) / sample_rate;
}

PitchFrame yin_frame(const float *x, std::size_t n, int sample_rate, const PitchOptions &opt) {
  PitchFrame out;
  double sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) sq += static_cast<double>(x[i]) * x[i];
  out.rms = n ? std::sqrt(sq / static_cast<double>(n)) : 0.0;
  if (out.rms < opt.energy_floor) return out;

  const std::size_t tau_min = static_cast<std::size_t>(std::floor(sample_rate / opt.max_f0));
  const std::size_t tau_max = static_cast<std::size_t>(std::ceil(sample_rate / opt.min_f0));
  if (n < tau_max + 2) return out;
  const std::size_t w = n - tau_max - 1;

  std::vector<double> d(tau_max + 2, 0.0), cmnd(tau_max + 2, 1.0);
  for (std::size_t tau = 1; tau <= tau_max + 1; ++tau) {
    double acc = 0.0;
    for (std::size_t j = 0; j < w; ++j) {
      double diff = static_cast<double>(x[j]) - x[j + tau];
      acc += diff * diff;
    }
    d[tau] = acc;
  }
  double running = 0.0;
  for (std::size_t tau = 1; tau <= tau_max + 1; ++tau) {
    running += d[tau];
    cmnd[tau] = running > 0.0 ? d[tau] * static_cast<double>(tau) / running : 1.0;
  }

  std::size_t tau = 0;
  for (std::size_t t = std::max<std::size_t>(tau_min, 2); t <= tau_max; ++t) {
    if (cmnd[t] < opt.threshold) {
      while (t + 1 <= tau_max && cmnd[t + 1] < cmnd[t]) ++t;
      tau = t;
      break;
    }
  }
  if (tau == 0) return out;

  // parabolic refinement on the difference function
  double a = cmnd[tau - 1], b = cmnd[tau], c = cmnd[tau + 1];
  double denom = a - 2.0 * b + c;
  double shift = std::abs(denom) > 1e-12 ? 0.5 * (a - c) / denom : 0.0;
  shift = std::clamp(shift, -1.0, 1.0);
  out.f0 = sample_rate / (static_cast<double>(tau) + shift);
  out.voiced = true;
  return out;
}

std::vector<PitchFrame> track_pitch(const std::vector<float> &x, const FrameSpec &frames,
                                    const PitchOptions &opt) {
  const std::size_t n_frames = frames.count(x.size());
  const std::size_t tau_max = static_cast<std::size_t>(std::ceil(frames.sample_rate / opt.min_f0));
  const std::size_t win = std::max(frames.length, 2 * tau_max + 2);

  std::vector<PitchFrame> track(n_frames);
  std::vector<float> buf(win);
  for (std::size_t k = 0; k < n_frames; ++k) {
    // energy from the frame itself
    const std::size_t f0 = k * frames.hop;
    const std::size_t f1 = std::min(x.size(), f0 + frames.length);
    double sq = 0.0;
    for (std::size_t i = f0; i < f1; ++i) sq += static_cast<double>(x[i]) * x[i];
    const double rms = std::sqrt(sq / static_cast<double>(frames.length));

    // pitch window centred on the frame, shifted inside the signal
    long centre = static_cast<long>(f0 + frames.length / 2);
    long start = centre - static_cast<long>(win / 2);
    start = std::clamp(start, 0L, std::max(0L, static_cast<long>(x.size()) - static_cast<long>(win)));
    std::fill(buf.begin(), buf.end(), 0.0f);
    for (std::size_t i = 0; i < win && static_cast<std::size_t>(start) + i < x.size(); ++i)
      buf[i] = x[static_cast<std::size_t>(start) + i];
    PitchFrame p;
    if (rms >= opt.energy_floor) p = yin_frame(buf.data(), win, frames.sample_rate, opt);
    p.rms = rms;
    if (rms < opt.energy_floor) {
      p.voiced = false;
      p.f0 = 0.0;
    }
    track[k] = p;
  }

  std::vector<PitchFrame> smoothed = track;
  for (std::size_t k = 1; k + 1 < n_frames; ++k) {
    if (!(track[k - 1].voiced && track[k].voiced && track[k + 1].voiced)) continue;
    double v[3] = {track[k - 1].f0, track[k].f0, track[k + 1].f0};
    std::sort(v, v + 3);
    smoothed[k].f0 = v[1];
  }
  return smoothed;
}

}  // namespace idr::prosody
