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

#ifndef ECTGEN_ECT_ORACLE_H_
#define ECTGEN_ECT_ORACLE_H_

#include <span>

#include "ectgen/ect.h"

namespace ectgen {

// Reference implementation of the switching-point predicate for verification
// tooling. Enumerates every ordered pair of links and marks both members of a
// crossing pair, using the sign of (i1 - i2) * (j1 - j2). Shares no code with
// ValidSwitchingPoints.
SwitchingPointSet CrossingOracle(std::span<const AlignmentPair> links);

}  // namespace ectgen

#endif  // ECTGEN_ECT_ORACLE_H_
