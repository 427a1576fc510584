// tests/unit/prosody_test.cc

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

#include <doctest.h>

#include <cmath>
#include <complex>
#include <filesystem>

#include "idr/prosody/cache.h"
#include "idr/prosody/features.h"
#include "idr/prosody/logmel.h"
#include "idr/prosody/pitch.h"
#include "support/gen.h"
#include "support/signals.h"

using namespace idr;
using namespace idr::prosody;
using audio::AudioClip;
using audio::WordTimestamp;

namespace {

AudioClip clip_of(std::vector<float> x, double origin = 0.0) {
  AudioClip c;
  c.samples = std::move(x);
  c.sample_rate = 16000;
  c.origin = {origin, origin + c.duration()};
  return c;
}

// Glottal-ish vowel: fundamental plus decaying harmonics.
std::vector<float> vowel(double f0, double seconds) {
  std::vector<float> x(static_cast<std::size_t>(seconds * 16000));
  for (std::size_t i = 0; i < x.size(); ++i) {
    double t = static_cast<double>(i) / 16000.0, v = 0.0;
    for (int h = 1; h <= 8; ++h) v += std::sin(2 * M_PI * f0 * h * t) / (h * h);
    x[i] = static_cast<float>(0.3 * v);
  }
  return x;
}

}  // namespace

TEST_SUITE("prosody") {

TEST_CASE("200 Hz vowel gives f0 near 200") {
  auto clip = clip_of(vowel(200, 0.6));
  auto m = extract_prosody_raw(clip, {{"aa", 0.05, 0.55}});
  CHECK(std::abs(m.rows(0, kF0Mean) - 200.0) <= 2.0);
  CHECK(m.rows(0, kVoicedRatio) == doctest::Approx(1.0));
  CHECK(m.rows(0, kDuration) == doctest::Approx(0.5));
}

TEST_CASE("tone pitch within one percent from 80 to 400 Hz") {
  for (double f = 80; f <= 400; f += 20) {
    auto track = track_pitch(idr::testing::tone(f, 0.4, 16000, 0.5));
    int voiced = 0;
    for (const auto &p : track) {
      if (!p.voiced) continue;
      ++voiced;
      CHECK(std::abs(p.f0 - f) <= 0.01 * f);
    }
    CHECK(voiced == static_cast<int>(track.size()));
  }
}

TEST_CASE("digital silence") {
  auto clip = clip_of(std::vector<float>(8000, 0.0f));
  auto m = extract_prosody_raw(clip, {{"sh", 0.1, 0.4}});
  CHECK(m.rows(0, kEnergyMean) == 0.0);
  CHECK(m.rows(0, kVoicedRatio) == 0.0);
  CHECK(m.rows(0, kF0Mean) == 0.0);
}

TEST_CASE("constant amplitude tone has flat energy") {
  auto clip = clip_of(idr::testing::tone(200, 1.0, 16000, 0.4));
  auto m = extract_prosody_raw(clip, {{"mm", 0.1, 0.9}});
  CHECK(m.rows(0, kEnergyStd) < 1e-6);
  CHECK(m.rows(0, kEnergyMean) == doctest::Approx(0.4 / std::sqrt(2.0)).epsilon(1e-3));
}

TEST_CASE("pitch slope follows a glide") {
  std::vector<float> x(16000);
  double phase = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double t = static_cast<double>(i) / 16000.0;
    phase += 2 * M_PI * (150.0 + 100.0 * t) / 16000.0;
    x[i] = static_cast<float>(0.5 * std::sin(phase));
  }
  auto m = extract_prosody_raw(clip_of(x), {{"ooh", 0.1, 0.9}});
  CHECK(m.rows(0, kF0Slope) == doctest::Approx(100.0).epsilon(0.05));
}

TEST_CASE("very short word uses the nearest frame") {
  auto clip = clip_of(idr::testing::tone(220, 0.5, 16000, 0.4));
  auto m = extract_prosody_raw(clip, {{"a", 0.2001, 0.2031}});
  CHECK(m.rows(0, kVoicedRatio) == 1.0);
  CHECK(std::abs(m.rows(0, kF0Mean) - 220.0) < 2.2);
}

TEST_CASE("pauses and neighbours") {
  auto clip = clip_of(idr::testing::tone(220, 1.0, 16000, 0.3), 10.0);
  std::vector<WordTimestamp> words = {{"a", 10.1, 10.3}, {"b", 10.5, 10.9}};
  auto m = extract_prosody_raw(clip, words, {9.9, 11.4});
  CHECK(m.rows(0, kPauseBefore) == doctest::Approx(0.2));
  CHECK(m.rows(0, kPauseAfter) == doctest::Approx(0.2));
  CHECK(m.rows(1, kPauseAfter) == doctest::Approx(0.5));
  auto edge = extract_prosody_raw(clip, words);
  CHECK(edge.rows(0, kPauseBefore) == doctest::Approx(0.1));
  CHECK_THROWS_AS(extract_prosody_raw(clip, {{"late", 10.5, 11.5}}), ContractError);
}

TEST_CASE("shift equivariance") {
  idr::testing::Gen g(6);
  auto base = vowel(180, 1.0);
  for (auto &v : base) v += static_cast<float>(g.normal(0, 0.01));
  std::vector<WordTimestamp> words = {{"x", 0.12, 0.4}, {"y", 0.45, 0.8}};
  auto ref = extract_prosody_raw(clip_of(base), words);
  // same samples, talk clock shifted
  auto moved = extract_prosody_raw(clip_of(base, 42.0), {{"x", 42.12, 42.4}, {"y", 42.45, 42.8}});
  CHECK((ref.rows - moved.rows).cwiseAbs().maxCoeff() < 1e-9);
  // audio delayed by whole hops, words shifted to match
  std::vector<float> padded(160 * 7, 0.0f);
  padded.insert(padded.end(), base.begin(), base.end());
  auto delayed = extract_prosody_raw(clip_of(padded), {{"x", 0.19, 0.47}, {"y", 0.52, 0.87}}, {0.0, 1.07});
  ref = extract_prosody_raw(clip_of(base), words, {-0.07, 1.0});
  for (int c : {kF0Mean, kEnergyMean, kDuration, kVoicedRatio, kPauseBefore})
    CHECK((ref.rows.col(c) - delayed.rows.col(c)).cwiseAbs().maxCoeff() < 1e-3 * (1 + ref.rows.col(c).cwiseAbs().maxCoeff()));
}

TEST_CASE("talk normalizer matches a two-pass computation") {
  idr::testing::Gen g(7);
  TalkNormalizer norm;
  Eigen::MatrixXd all(0, kProsodyDim);
  std::vector<Eigen::MatrixXd> parts;
  for (int p = 0; p < 5; ++p) {
    Eigen::MatrixXd m(g.integer(1, 7), kProsodyDim);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = g.normal(3.0, 2.0);
    m.col(kVoicedRatio).setConstant(1.0);
    norm.accumulate(m);
    parts.push_back(m);
    Eigen::MatrixXd grown(all.rows() + m.rows(), kProsodyDim);
    grown << all, m;
    all = grown;
  }
  Eigen::VectorXd mean = all.colwise().mean().transpose();
  Eigen::VectorXd sd = ((all.rowwise() - mean.transpose()).array().square().colwise().sum() / static_cast<double>(all.rows())).sqrt().transpose();
  CHECK((norm.mean() - mean).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((norm.stddev() - sd).cwiseAbs().maxCoeff() < 1e-12);
  Eigen::MatrixXd z = norm.apply(all);
  for (int c = 0; c < kProsodyDim; ++c) {
    CHECK(std::abs(z.col(c).mean()) < 1e-9);
    if (c == kVoicedRatio) {
      CHECK(z.col(c).cwiseAbs().maxCoeff() == 0.0);
    } else {
      CHECK(std::sqrt(z.col(c).array().square().mean()) == doctest::Approx(1.0));
    }
  }
  CHECK(z.allFinite());
}

TEST_CASE("one second of audio has 98 frames") {
  auto lm = compute_logmel(clip_of(idr::testing::tone(440, 1.0, 16000)));
  CHECK(lm.frames.cols() == 98);
  CHECK(lm.frames.rows() == 128);
  CHECK(lm.mask.size() == 98);
  CHECK(std::all_of(lm.mask.begin(), lm.mask.end(), [](auto m) { return m == 1; }));
  CHECK(compute_logmel(clip_of(std::vector<float>(100, 0.1f))).frames.cols() == 1);
  for (std::size_t n : {400u, 559u, 560u, 16159u, 16160u})
    CHECK(compute_logmel(clip_of(std::vector<float>(n, 0.1f))).frames.cols() ==
          static_cast<Eigen::Index>(1 + (n - 400) / 160));
}

TEST_CASE("silence sits on the floor") {
  auto lm = compute_logmel(clip_of(std::vector<float>(8000, 0.0f)));
  CHECK((lm.frames.array() - std::log(1e-10)).abs().maxCoeff() < 1e-12);
}

TEST_CASE("doubling amplitude adds log 4") {
  idr::testing::Gen g(8);
  std::vector<float> x(16000);
  for (auto &v : x) v = static_cast<float>(g.normal(0, 0.1));
  std::vector<float> y(x);
  for (auto &v : y) v *= 2.0f;
  auto a = compute_logmel(clip_of(x)), b = compute_logmel(clip_of(y));
  Eigen::ArrayXXd diff = b.frames.array() - a.frames.array();
  CHECK((diff - std::log(4.0)).abs().maxCoeff() < 1e-9);
}

TEST_CASE("power spectrum agrees with a direct DFT") {
  idr::testing::Gen g(9);
  std::vector<float> x(400);
  for (auto &v : x) v = static_cast<float>(g.normal(0, 0.2));
  auto lm = compute_logmel(clip_of(x));
  std::vector<double> power(257);
  for (int k = 0; k < 257; ++k) {
    std::complex<double> acc = 0;
    for (int n = 0; n < 400; ++n) {
      double w = 0.5 - 0.5 * std::cos(2 * M_PI * n / 400.0);
      acc += static_cast<double>(x[static_cast<std::size_t>(n)]) * w * std::polar(1.0, -2 * M_PI * k * n / 512.0);
    }
    power[static_cast<std::size_t>(k)] = std::norm(acc);
  }
  Eigen::MatrixXd fb = mel_filterbank();
  for (int m = 0; m < 128; ++m) {
    double e = 0;
    for (int k = 0; k < 257; ++k) e += fb(m, k) * power[static_cast<std::size_t>(k)];
    CHECK(lm.frames(m, 0) == doctest::Approx(std::log(std::max(e, 1e-10))).epsilon(1e-9));
  }
}

TEST_CASE("filterbank rows sum to one and cover the band") {
  Eigen::MatrixXd fb = mel_filterbank();
  REQUIRE(fb.rows() == 128);
  REQUIRE(fb.cols() == 257);
  for (int m = 0; m < 128; ++m) CHECK(fb.row(m).sum() == doctest::Approx(1.0));
  CHECK((fb.array() >= 0).all());
  for (int k = 0; k < 257; ++k) CHECK(fb.col(k).sum() > 0.0);
  for (int m = 0; m + 1 < 128; ++m) CHECK(fb.row(m).dot(fb.row(m + 1)) > 0.0);
  CHECK(hz_to_mel(mel_to_hz(1234.5)) == doctest::Approx(1234.5));
}

TEST_CASE("feature blob round trip") {
  idr::testing::Gen g(10);
  Eigen::MatrixXd m(5, 9);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = g.normal();
  auto bytes = encode_feature_blob(m);
  CHECK(bytes.size() == 8 + 45 * 4);
  Eigen::MatrixXd back = decode_feature_blob(bytes);
  CHECK((back - m).cwiseAbs().maxCoeff() < 1e-6);
  CHECK(encode_feature_blob(back) == bytes);
  CHECK_THROWS_AS(decode_feature_blob(bytes.substr(0, 20)), ParseError);
  auto p = feature_cache_path("/tmp/c", "i1", "prosody", kProsodyFeatureVersion);
  CHECK(p.filename().string() == "i1.prosody.prosody9-talkz-v1.bin");
}

}  // TEST_SUITE
