// src/prosody/features.cc

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

#include "idr/prosody/features.h"

#include <algorithm>
#include <cmath>

#include "idr/base/error.h"

namespace idr::prosody {

ProsodyMatrix extract_prosody_raw(const audio::AudioClip &clip,
                                  const std::vector<audio::WordTimestamp> &words,
                                  const WordNeighbours &neighbours, const FrameSpec &frames,
                                  const PitchOptions &pitch) {
  if (clip.sample_rate != frames.sample_rate)
    throw ContractError("clip rate " + std::to_string(clip.sample_rate) + " does not match frame rate");
  const auto track = track_pitch(clip.samples, frames, pitch);
  const double t0 = clip.origin.start;
  constexpr double kSlack = 1e-6;

  ProsodyMatrix out;
  out.word_refs = words;
  out.rows = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(words.size()), kProsodyDim);
  for (std::size_t w = 0; w < words.size(); ++w) {
    const auto &word = words[w];
    const double a = word.start - t0, b = word.end - t0;
    if (a < -kSlack || b > clip.duration() + kSlack)
      throw ContractError("word '" + word.word + "' lies outside the clip");

    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < track.size(); ++k) {
      double c = frames.center_seconds(k);
      if (c >= a && c < b) idx.push_back(k);
    }
    if (idx.empty()) {
      double mid = 0.5 * (a + b);
      std::size_t best = 0;
      for (std::size_t k = 1; k < track.size(); ++k)
        if (std::abs(frames.center_seconds(k) - mid) < std::abs(frames.center_seconds(best) - mid)) best = k;
      idx.push_back(best);
    }

    // f0 statistics over voiced frames
    std::vector<double> ts, fs;
    for (auto k : idx)
      if (track[k].voiced) {
        ts.push_back(frames.center_seconds(k));
        fs.push_back(track[k].f0);
      }
    double f0_mean = 0, f0_std = 0, f0_slope = 0;
    if (!fs.empty()) {
      for (double f : fs) f0_mean += f;
      f0_mean /= static_cast<double>(fs.size());
      for (double f : fs) f0_std += (f - f0_mean) * (f - f0_mean);
      f0_std = std::sqrt(f0_std / static_cast<double>(fs.size()));
      if (fs.size() >= 2) {
        double tm = 0;
        for (double t : ts) tm += t;
        tm /= static_cast<double>(ts.size());
        double sxy = 0, sxx = 0;
        for (std::size_t i = 0; i < fs.size(); ++i) {
          sxy += (ts[i] - tm) * (fs[i] - f0_mean);
          sxx += (ts[i] - tm) * (ts[i] - tm);
        }
        f0_slope = sxx > 0 ? sxy / sxx : 0.0;
      }
    }

    // RMS over the word's own samples, spread over its frames
    const double rate = clip.sample_rate;
    std::size_t s0 = static_cast<std::size_t>(std::clamp<long long>(std::llround(a * rate), 0, static_cast<long long>(clip.samples.size())));
    std::size_t s1 = static_cast<std::size_t>(std::clamp<long long>(std::llround(b * rate), 0, static_cast<long long>(clip.samples.size())));
    double energy_mean = 0.0;
    if (s1 > s0) {
      double sq = 0;
      for (std::size_t i = s0; i < s1; ++i) sq += static_cast<double>(clip.samples[i]) * clip.samples[i];
      energy_mean = std::sqrt(sq / static_cast<double>(s1 - s0));
    } else {
      energy_mean = track[idx.front()].rms;
    }
    double rms_mean = 0, energy_std = 0;
    for (auto k : idx) rms_mean += track[k].rms;
    rms_mean /= static_cast<double>(idx.size());
    for (auto k : idx) energy_std += (track[k].rms - rms_mean) * (track[k].rms - rms_mean);
    energy_std = std::sqrt(energy_std / static_cast<double>(idx.size()));

    double prev_end = w > 0 ? words[w - 1].end : neighbours.prev_end.value_or(t0);
    double next_start = w + 1 < words.size() ? words[w + 1].start
                                             : neighbours.next_start.value_or(t0 + clip.duration());

    auto row = out.rows.row(static_cast<Eigen::Index>(w));
    row(kF0Mean) = f0_mean;
    row(kF0Std) = f0_std;
    row(kF0Slope) = f0_slope;
    row(kEnergyMean) = energy_mean;
    row(kEnergyStd) = energy_std;
    row(kDuration) = word.end - word.start;
    row(kPauseBefore) = std::max(0.0, word.start - prev_end);
    row(kPauseAfter) = std::max(0.0, next_start - word.end);
    row(kVoicedRatio) = static_cast<double>(fs.size()) / static_cast<double>(idx.size());
  }
  return out;
}

void TalkNormalizer::accumulate(const Eigen::MatrixXd &raw_rows) {
  if (raw_rows.cols() != kProsodyDim) throw ContractError("prosody rows must have 9 columns");
  for (Eigen::Index r = 0; r < raw_rows.rows(); ++r) {
    ++n_;
    Eigen::VectorXd x = raw_rows.row(r).transpose();
    Eigen::VectorXd delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta.cwiseProduct(x - mean_);
  }
}

Eigen::VectorXd TalkNormalizer::stddev() const {
  if (n_ == 0) return Eigen::VectorXd::Zero(kProsodyDim);
  return (m2_ / static_cast<double>(n_)).cwiseMax(0.0).cwiseSqrt();
}

Eigen::MatrixXd TalkNormalizer::apply(const Eigen::MatrixXd &raw_rows) const {
  if (n_ == 0) throw ContractError("normalizer has seen no words");
  Eigen::VectorXd sd = stddev();
  Eigen::MatrixXd out(raw_rows.rows(), raw_rows.cols());
  for (Eigen::Index c = 0; c < raw_rows.cols(); ++c) {
    if (sd(c) < 1e-9) {
      out.col(c).setZero();
    } else {
      out.col(c) = (raw_rows.col(c).array() - mean_(c)) / sd(c);
    }
  }
  return out;
}

ProsodyMatrix extract_prosody(const audio::AudioClip &clip,
                              const std::vector<audio::WordTimestamp> &words,
                              const TalkNormalizer &normalizer, const WordNeighbours &neighbours) {
  auto m = extract_prosody_raw(clip, words, neighbours);
  m.rows = normalizer.apply(m.rows);
  return m;
}

}  // namespace idr::prosody
