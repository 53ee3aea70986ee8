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

#include "ectgen/ect.h"

#include <algorithm>
#include <unordered_set>

namespace ectgen {

std::string_view ToString(ConstraintSide side) {
  return side == ConstraintSide::kL2Only ? "l2_only" : "both";
}

ConstraintSide ParseConstraintSide(std::string_view text) {
  if (text == "l2_only") return ConstraintSide::kL2Only;
  if (text == "both") return ConstraintSide::kBoth;
  throw Error(ErrorCode::kParse,
              "unknown constraint side \"" + std::string(text) + "\"");
}

SwitchingPointSet ValidSwitchingPoints(std::span<const AlignmentPair> links,
                                       std::string pair_id) {
  SwitchingPointSet out;
  out.pair_id = std::move(pair_id);
  out.all_links_count = links.size();
  for (const AlignmentPair& a : links) {
    bool valid = true;
    for (const AlignmentPair& b : links) {
      if ((a.i < b.i && a.j > b.j) || (a.i > b.i && a.j < b.j)) {
        valid = false;
        break;
      }
    }
    if (valid) out.valid_links.push_back(a);
  }
  std::stable_sort(out.valid_links.begin(), out.valid_links.end());
  return out;
}

ConstraintWords BuildConstraintWords(const SwitchingPointSet& points,
                                     const TokenizedPair& pair,
                                     ConstraintSide side,
                                     std::optional<size_t> max_words) {
  ConstraintWords out;
  out.side = side;
  std::unordered_set<std::string> seen;
  auto add = [&](const std::string& word) {
    if (seen.insert(word).second) out.words.push_back(word);
  };
  for (const AlignmentPair& link : points.valid_links) {
    if (link.i >= pair.tokens_l1.size() || link.j >= pair.tokens_l2.size()) {
      throw Error(ErrorCode::kOutOfRange,
                  "switching point " + std::to_string(link.i) + "-" +
                      std::to_string(link.j) + " outside the tokenized pair");
    }
    if (side == ConstraintSide::kBoth) add(pair.tokens_l1[link.i]);
    add(pair.tokens_l2[link.j]);
  }
  if (max_words && out.words.size() > *max_words) out.words.resize(*max_words);
  return out;
}

void to_json(Json& j, const SwitchingPointSet& s) {
  Json links = Json::array();
  for (const AlignmentPair& link : s.valid_links) {
    links.push_back(Json::array({link.i, link.j}));
  }
  j = Json{{"pair_id", s.pair_id},
           {"valid_links", std::move(links)},
           {"all_links_count", s.all_links_count}};
}

void from_json(const Json& j, SwitchingPointSet& s) {
  s = SwitchingPointSet{};
  s.pair_id = j.at("pair_id").get<std::string>();
  s.all_links_count = j.at("all_links_count").get<size_t>();
  for (const Json& link : j.at("valid_links")) {
    s.valid_links.push_back({link.at(0).get<size_t>(), link.at(1).get<size_t>()});
  }
  if (s.valid_links.size() > s.all_links_count) {
    throw Error(ErrorCode::kParse, "more valid links than links in " + s.pair_id);
  }
}

}  // namespace ectgen
