// include/idr/prosody/features.h

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

#ifndef IDR_PROSODY_FEATURES_H_
#define IDR_PROSODY_FEATURES_H_

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "idr/audio/clip.h"
#include "idr/audio/words.h"
#include "idr/prosody/pitch.h"

namespace idr::prosody {

inline constexpr int kProsodyDim = 9;

enum ProsodyFeature : int {
  kF0Mean = 0,
  kF0Std,
  kF0Slope,
  kEnergyMean,
  kEnergyStd,
  kDuration,
  kPauseBefore,
  kPauseAfter,
  kVoicedRatio,
};

inline constexpr std::array<std::string_view, kProsodyDim> kProsodyFeatureNames = {
    "f0_mean",  "f0_std",       "f0_slope",    "energy_mean", "energy_std",
    "duration", "pause_before", "pause_after", "voiced_ratio"};

struct ProsodyMatrix {
  Eigen::MatrixXd rows;  // W x 9
  std::vector<audio::WordTimestamp> word_refs;
};

// Neighbouring word times from the talk, for the pauses of the first and
// last word. Without them the clip edges stand in.
struct WordNeighbours {
  std::optional<double> prev_end;
  std::optional<double> next_start;
};

// Per-word features before normalization. Word times are talk times; the
// clip's origin places them in the clip. A word shorter than one frame
// takes the frame nearest its midpoint.
ProsodyMatrix extract_prosody_raw(const audio::AudioClip &clip,
                                  const std::vector<audio::WordTimestamp> &words,
                                  const WordNeighbours &neighbours = {},
                                  const FrameSpec &frames = {}, const PitchOptions &pitch = {});

// Per-talk z-normalization. Statistics accumulate over every word of the
// talk before any matrix is normalized; a dimension with (near) zero
// spread maps to 0.
class TalkNormalizer {
 public:
  void accumulate(const Eigen::MatrixXd &raw_rows);
  std::size_t count() const { return n_; }
  Eigen::VectorXd mean() const { return mean_; }
  Eigen::VectorXd stddev() const;
  Eigen::MatrixXd apply(const Eigen::MatrixXd &raw_rows) const;

 private:
  std::size_t n_ = 0;
  Eigen::VectorXd mean_ = Eigen::VectorXd::Zero(kProsodyDim);
  Eigen::VectorXd m2_ = Eigen::VectorXd::Zero(kProsodyDim);
};

ProsodyMatrix extract_prosody(const audio::AudioClip &clip,
                              const std::vector<audio::WordTimestamp> &words,
                              const TalkNormalizer &normalizer,
                              const WordNeighbours &neighbours = {});

}  // namespace idr::prosody

#endif  // IDR_PROSODY_FEATURES_H_
