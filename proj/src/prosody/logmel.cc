// src/prosody/logmel.cc

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

#include "idr/prosody/logmel.h"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>

#include "idr/base/error.h"

namespace idr::prosody {
namespace {

// FFTW planning is not thread-safe.
std::mutex &planner_mutex() {
  static std::mutex mu;
  return mu;
}

// Integral of a unit-height triangle (l, c, r) from -inf to x.
double triangle_cdf(double x, double l, double c, double r) {
  if (x <= l) return 0.0;
  if (x <= c) return (x - l) * (x - l) / (2.0 * (c - l));
  if (x <= r) return (c - l) / 2.0 + (r - c) / 2.0 - (r - x) * (r - x) / (2.0 * (r - c));
  return (r - l) / 2.0;
}

}  // namespace

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

Eigen::MatrixXd mel_filterbank(const MelConfig &cfg) {
  const std::size_t n_bins = cfg.n_fft / 2 + 1;
  const double bin_hz = static_cast<double>(cfg.sample_rate) / static_cast<double>(cfg.n_fft);
  const double m_lo = hz_to_mel(cfg.f_min), m_hi = hz_to_mel(cfg.f_max);
  std::vector<double> edges(static_cast<std::size_t>(cfg.n_mels) + 2);
  for (std::size_t i = 0; i < edges.size(); ++i)
    edges[i] = mel_to_hz(m_lo + (m_hi - m_lo) * static_cast<double>(i) / static_cast<double>(cfg.n_mels + 1));

  Eigen::MatrixXd fb = Eigen::MatrixXd::Zero(cfg.n_mels, static_cast<Eigen::Index>(n_bins));
  for (int m = 0; m < cfg.n_mels; ++m) {
    const double l = edges[static_cast<std::size_t>(m)], c = edges[static_cast<std::size_t>(m) + 1],
                 r = edges[static_cast<std::size_t>(m) + 2];
    for (std::size_t k = 0; k < n_bins; ++k) {
      const double a = (static_cast<double>(k) - 0.5) * bin_hz, b = (static_cast<double>(k) + 0.5) * bin_hz;
      fb(m, static_cast<Eigen::Index>(k)) = triangle_cdf(b, l, c, r) - triangle_cdf(a, l, c, r);
    }
    fb.row(m) /= fb.row(m).sum();
  }
  return fb;
}

LogMel compute_logmel(const audio::AudioClip &clip, const MelConfig &cfg) {
  if (clip.sample_rate != cfg.sample_rate)
    throw ContractError("log-mel expects " + std::to_string(cfg.sample_rate) + " Hz audio, got " +
                        std::to_string(clip.sample_rate));
  if (cfg.window > cfg.n_fft) throw ContractError("window longer than FFT size");
  const std::size_t n = clip.samples.size();
  const std::size_t n_frames = n < cfg.window ? 1 : 1 + (n - cfg.window) / cfg.hop;
  const std::size_t n_bins = cfg.n_fft / 2 + 1;

  static const Eigen::MatrixXd default_bank = mel_filterbank();
  const bool stock = cfg.n_mels == 128 && cfg.n_fft == 512 && cfg.sample_rate == 16000 &&
                     cfg.f_min == 0.0 && cfg.f_max == 8000.0;
  const Eigen::MatrixXd bank = stock ? default_bank : mel_filterbank(cfg);

  std::vector<double> hann(cfg.window);
  for (std::size_t i = 0; i < cfg.window; ++i)
    hann[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * static_cast<double>(i) / static_cast<double>(cfg.window));

  auto in = std::unique_ptr<double, decltype(&fftw_free)>(
      static_cast<double *>(fftw_malloc(sizeof(double) * cfg.n_fft)), &fftw_free);
  auto out = std::unique_ptr<fftw_complex, decltype(&fftw_free)>(
      static_cast<fftw_complex *>(fftw_malloc(sizeof(fftw_complex) * n_bins)), &fftw_free);
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(cfg.n_fft), in.get(), out.get(), FFTW_ESTIMATE);
  }

  Eigen::MatrixXd power(static_cast<Eigen::Index>(n_bins), static_cast<Eigen::Index>(n_frames));
  for (std::size_t t = 0; t < n_frames; ++t) {
    std::fill(in.get(), in.get() + cfg.n_fft, 0.0);
    for (std::size_t i = 0; i < cfg.window; ++i) {
      std::size_t s = t * cfg.hop + i;
      if (s < n) in.get()[i] = clip.samples[s] * hann[i];
    }
    fftw_execute(plan);
    for (std::size_t k = 0; k < n_bins; ++k) {
      const double re = out.get()[k][0], im = out.get()[k][1];
      power(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(t)) = re * re + im * im;
    }
  }
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }

  LogMel lm;
  lm.frames = (bank * power).array().max(cfg.floor).unaryExpr([](double v) { return std::log(v); }).matrix();
  lm.mask.assign(n_frames, 1);
  return lm;
}

}  // namespace idr::prosody
