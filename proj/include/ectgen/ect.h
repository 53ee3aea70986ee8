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

#ifndef ECTGEN_ECT_H_
#define ECTGEN_ECT_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ectgen/alignment.h"

// Relaxed Equivalence Constraint: an alignment link is a valid switching point
// iff no other link crosses it in linear order.
namespace ectgen {

struct SwitchingPointSet {
  std::string pair_id;
  Links valid_links;  // ascending (i, j)
  size_t all_links_count = 0;

  bool operator==(const SwitchingPointSet&) const = default;
};

enum class ConstraintSide { kL2Only, kBoth };

std::string_view ToString(ConstraintSide side);
ConstraintSide ParseConstraintSide(std::string_view text);

struct ConstraintWords {
  std::vector<std::string> words;
  ConstraintSide side = ConstraintSide::kL2Only;

  bool operator==(const ConstraintWords&) const = default;
};

// Pairwise check over all links. Links sharing an i or a j (one-to-many
// alignments) do not cross each other.
SwitchingPointSet ValidSwitchingPoints(std::span<const AlignmentPair> links,
                                       std::string pair_id = {});

// l2_only: tokens_l2[j] for each valid link in ascending i order; both:
// tokens_l1[i] then tokens_l2[j]. Deduplicated, first occurrence wins.
// `max_words` truncates after deduplication.
ConstraintWords BuildConstraintWords(const SwitchingPointSet& points,
                                     const TokenizedPair& pair,
                                     ConstraintSide side = ConstraintSide::kL2Only,
                                     std::optional<size_t> max_words = std::nullopt);

void to_json(Json& j, const SwitchingPointSet& s);
void from_json(const Json& j, SwitchingPointSet& s);

}  // namespace ectgen

#endif  // ECTGEN_ECT_H_
