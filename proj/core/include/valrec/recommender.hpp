// Copyright 2026 The valrec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Ranked value suggestions for a target field.
//
// With a non-empty context a rule scores Jaccard(antecedent, context) times
// its confidence. With an empty context it scores its support divided by the
// training-instance count of its source template. Values are deduplicated by
// value identity (best rule wins), zero scores are dropped, and the rest are
// ordered by score, then support, then normalized label.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "valrec/rule_index.hpp"

namespace valrec {

struct Recommendation {
  ValueAtom value;
  double score = 0.0;
  std::uint32_t support = 0;
  std::size_t rank = 0;

  friend bool operator==(const Recommendation&, const Recommendation&) = default;
};

struct RecommendOptions {
  std::optional<double> score_cutoff;
  std::optional<std::size_t> max_results;
};

// Training-instance count per template id.
using TrainCounts = std::map<std::string, std::size_t, std::less<>>;

double recommendation_score(const AssociationRule& rule, const Context& context, const MappingRepository& mappings);

// Throws InvalidCount when train_count < rule.support or train_count == 0.
double no_context_score(const AssociationRule& rule, std::size_t train_count);

// Throws TargetInContext, DuplicateField, InvalidCount (missing train count).
std::vector<Recommendation> recommend(const Context& context, const FieldSlot& target, const RuleIndex& index,
                                      const TrainCounts& train_counts, const RecommendOptions& options = {});

// Score as a whole percentage, rounded to nearest: 0.28 -> "28%".
std::string format_percent(double score);

}  // namespace valrec
