// tests/support/signals.h

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

#ifndef IDR_TESTS_SUPPORT_SIGNALS_H_
#define IDR_TESTS_SUPPORT_SIGNALS_H_

#include <cmath>
#include <vector>

namespace idr::testing {

inline std::vector<float> tone(double freq, double seconds, int rate, double amp = 0.5, double phase = 0.0) {
  std::vector<float> out(static_cast<std::size_t>(std::llround(seconds * rate)));
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = static_cast<float>(amp * std::sin(2.0 * M_PI * freq * static_cast<double>(i) / rate + phase));
  return out;
}

// Power at one frequency (Goertzel recurrence).
inline double goertzel_power(const std::vector<float> &x, double freq, int rate) {
  const double w = 2.0 * M_PI * freq / rate;
  const double coeff = 2.0 * std::cos(w);
  double s1 = 0.0, s2 = 0.0;
  for (float v : x) {
    double s0 = v + coeff * s1 - s2;
    s2 = s1;
    s1 = s0;
  }
  return s1 * s1 + s2 * s2 - coeff * s1 * s2;
}

// Frequency with the most Goertzel power on a grid over [lo, hi].
inline double dominant_frequency(const std::vector<float> &x, int rate, double lo, double hi, double step) {
  double best_f = lo, best_p = -1.0;
  for (double f = lo; f <= hi + 1e-9; f += step) {
    double p = goertzel_power(x, f, rate);
    if (p > best_p) {
      best_p = p;
      best_f = f;
    }
  }
  return best_f;
}

}  // namespace idr::testing

#endif  // IDR_TESTS_SUPPORT_SIGNALS_H_
