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

#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "valrec/mapping.hpp"
#include "valrec/mining.hpp"

namespace valrec {

// Immutable rule store with an inverted map from consequent field identity
// to rules. Pair identities of every rule are resolved once at build time
// against the mapping snapshot the index holds.
class RuleIndex {
 public:
  RuleIndex(std::vector<AssociationRule> rules, std::shared_ptr<const MappingRepository> mappings);

  const std::vector<AssociationRule>& rules() const noexcept { return rules_; }
  const MappingRepository& mappings() const noexcept { return *mappings_; }
  const std::shared_ptr<const MappingRepository>& mappings_ptr() const noexcept { return mappings_; }

  // Ids of rules whose consequent field matches `target`; empty when unknown.
  std::span<const std::size_t> select_ids(const FieldSlot& target) const;
  std::span<const std::size_t> select_ids(const MatchKey& target_field) const;

  // Sorted, unique pair identities of the rule's antecedent.
  const std::vector<PairKey>& antecedent_keys(std::size_t rule_id) const { return antecedent_keys_[rule_id]; }
  const MatchKey& consequent_value_key(std::size_t rule_id) const { return consequent_value_keys_[rule_id]; }
  // normalize_label of the consequent value label.
  const std::string& consequent_sort_label(std::size_t rule_id) const { return consequent_sort_labels_[rule_id]; }

  std::size_t consequent_field_count() const noexcept { return by_consequent_field_.size(); }

 private:
  std::vector<AssociationRule> rules_;
  std::shared_ptr<const MappingRepository> mappings_;
  std::vector<std::vector<PairKey>> antecedent_keys_;
  std::vector<MatchKey> consequent_value_keys_;
  std::vector<std::string> consequent_sort_labels_;
  std::unordered_map<MatchKey, std::vector<std::size_t>> by_consequent_field_;
};

RuleIndex build_index(std::vector<AssociationRule> rules, std::shared_ptr<const MappingRepository> mappings);
RuleIndex build_index(std::vector<AssociationRule> rules, const MappingRepository& mappings);

std::vector<const AssociationRule*> select_rules(const RuleIndex& index, const FieldSlot& target);

// |A ∩ B| / |A ∪ B| over sorted, unique identity sets. Two empty sets score 0.
double jaccard(std::span<const PairKey> a, std::span<const PairKey> b);

// Sorted, unique pair identities of the context.
std::vector<PairKey> context_keys(const Context& context, const MappingRepository& mappings);

double context_matching_score(const AssociationRule& rule, const Context& context,
                              const MappingRepository& mappings);

// Rule store: one JSON object per line with antecedent[], consequent[],
// support, confidence and templateId. Each pair entry carries fieldLabel,
// fieldType, fieldTypeMappings, fieldValueLabel, fieldValueType and
// fieldValueMappings; the mapping arrays are informational and ignored on load.
void save_rules(std::ostream& out, const std::vector<AssociationRule>& rules, const MappingRepository& mappings);
// Throws ParseError.
std::vector<AssociationRule> load_rules(std::istream& in);

}  // namespace valrec
