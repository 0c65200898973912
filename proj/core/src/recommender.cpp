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

#include "valrec/recommender.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <unordered_map>

namespace valrec {

double recommendation_score(const AssociationRule& rule, const Context& context, const MappingRepository& mappings) {
  return context_matching_score(rule, context, mappings) * rule.confidence;
}

double no_context_score(const AssociationRule& rule, std::size_t train_count) {
  if (train_count == 0 || train_count < rule.support) {
    throw InvalidCount("training count " + std::to_string(train_count) + " is below rule support " +
                       std::to_string(rule.support));
  }
  return static_cast<double>(rule.support) / static_cast<double>(train_count);
}

namespace {

struct Candidate {
  std::size_t rule_id;
  double score;
  std::uint32_t support;
  const std::string* sort_label;
  const MatchKey* value_key;
};

// Strict "ranks before" order; also decides which rule wins a duplicate value.
bool ranks_before(const Candidate& a, const Candidate& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.support != b.support) return a.support > b.support;
  if (*a.sort_label != *b.sort_label) return *a.sort_label < *b.sort_label;
  if (*a.value_key != *b.value_key) return *a.value_key < *b.value_key;
  return a.rule_id < b.rule_id;
}

}  // namespace

std::vector<Recommendation> recommend(const Context& context, const FieldSlot& target, const RuleIndex& index,
                                      const TrainCounts& train_counts, const RecommendOptions& options) {
  const MappingRepository& mappings = index.mappings();
  validate_context(context, mappings);
  const MatchKey target_key = field_key(target, mappings);
  for (const auto& pair : context.pairs) {
    if (field_key(pair.field, mappings) == target_key) throw TargetInContext(target.label);
  }

  const std::vector<PairKey> ctx_keys = context_keys(context, mappings);
  const auto& rules = index.rules();

  std::unordered_map<MatchKey, Candidate> best;
  for (std::size_t id : index.select_ids(target_key)) {
    const AssociationRule& rule = rules[id];
    double score;
    if (context.empty()) {
      auto it = train_counts.find(rule.template_id);
      if (it == train_counts.end()) {
        throw InvalidCount("no training count for template '" + rule.template_id + "'");
      }
      score = no_context_score(rule, it->second);
    } else {
      score = jaccard(index.antecedent_keys(id), ctx_keys) * rule.confidence;
    }
    if (!(score > 0.0)) continue;

    const MatchKey& vkey = index.consequent_value_key(id);
    const Candidate c{id, score, rule.support, &index.consequent_sort_label(id), &vkey};
    auto [it, inserted] = best.try_emplace(vkey, c);
    if (!inserted && ranks_before(c, it->second)) it->second = c;
  }

  std::vector<Candidate> ranked;
  ranked.reserve(best.size());
  for (auto& [key, c] : best) {
    if (options.score_cutoff && c.score < *options.score_cutoff) continue;
    ranked.push_back(c);
  }
  std::sort(ranked.begin(), ranked.end(), ranks_before);
  if (options.max_results && ranked.size() > *options.max_results) ranked.resize(*options.max_results);

  std::vector<Recommendation> out;
  out.reserve(ranked.size());
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    out.push_back({rules[ranked[i].rule_id].consequent.value, ranked[i].score, ranked[i].support, i + 1});
  }
  return out;
}

std::string format_percent(double score) {
  return std::to_string(static_cast<long long>(std::llround(score * 100.0))) + "%";
}

}  // namespace valrec
