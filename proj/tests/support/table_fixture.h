// tests/support/table_fixture.h

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

#ifndef IDR_TESTS_SUPPORT_TABLE_FIXTURE_H_
#define IDR_TESTS_SUPPORT_TABLE_FIXTURE_H_

#include <array>
#include <cstdio>
#include <string>

#include "idr/dataset/manifest.h"

namespace idr::testing {

// Reference English counts: per (split, class) relations and talks per split.
// Row sums are 1563/520/520, column sums 593/704/546/760.
inline constexpr std::array<std::array<int, 4>, 3> kEnglishCells = {{
    {356, 423, 328, 456},
    {118, 141, 109, 152},
    {119, 140, 109, 152},
}};
inline constexpr std::array<int, 3> kEnglishTalks = {188, 78, 82};

// A pre-split manifest whose rows replicate the English table. Relations of
// a split are dealt round-robin over that split's talks.
inline dataset::DatasetManifest english_table_manifest() {
  dataset::DatasetManifest m;
  int talk_base = 0, next_id = 0;
  for (int s = 0; s < 3; ++s) {
    int k = 0;
    for (int c = 0; c < 4; ++c)
      for (int n = 0; n < kEnglishCells[s][c]; ++n, ++k) {
        char buf[32];
        dataset::ManifestEntry e;
        std::snprintf(buf, sizeof buf, "en-%05d", next_id++);
        e.instance_id = buf;
        std::snprintf(buf, sizeof buf, "talk-%04d", talk_base + k % kEnglishTalks[s]);
        e.talk_id = buf;
        e.language = "en";
        e.label = static_cast<corpus::RelationLabel>(c);
        e.arg1_text = "first argument";
        e.arg2_text = "second argument";
        e.arg1_clip = "clips/" + e.instance_id + ".arg1.wav";
        e.arg2_clip = "clips/" + e.instance_id + ".arg2.wav";
        e.split = static_cast<dataset::Split>(s);
        m.instances.push_back(std::move(e));
      }
    talk_base += kEnglishTalks[s];
  }
  m.normalize();
  return m;
}

}  // namespace idr::testing

#endif  // IDR_TESTS_SUPPORT_TABLE_FIXTURE_H_
