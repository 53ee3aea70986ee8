// Copyright 2026 The ectgen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ectgen/ect_oracle.h"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace ectgen {

SwitchingPointSet CrossingOracle(std::span<const AlignmentPair> links) {
  const size_t n = links.size();
  std::vector<char> crossed(n, 0);
  for (size_t p = 0; p < n; ++p) {
    for (size_t q = 0; q < n; ++q) {
      const int64_t di = static_cast<int64_t>(links[p].i) -
                         static_cast<int64_t>(links[q].i);
      const int64_t dj = static_cast<int64_t>(links[p].j) -
                         static_cast<int64_t>(links[q].j);
      if (di * dj < 0) {
        crossed[p] = 1;
        crossed[q] = 1;
      }
    }
  }
  SwitchingPointSet out;
  out.all_links_count = n;
  for (size_t p = 0; p < n; ++p) {
    if (!crossed[p]) out.valid_links.push_back(links[p]);
  }
  std::sort(out.valid_links.begin(), out.valid_links.end(),
            [](const AlignmentPair& a, const AlignmentPair& b) {
              return a.i != b.i ? a.i < b.i : a.j < b.j;
            });
  return out;
}

}  // namespace ectgen
