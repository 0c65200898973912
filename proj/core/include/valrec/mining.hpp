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

// Level-wise (Apriori) frequent itemset mining over field-value pairs and
// generation of association rules with a single-pair consequent.
//
// Items are pair identities (field key, value key), so synonyms that resolve
// to the same ontology class are counted together. Mining is per template.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "valrec/mapping.hpp"
#include "valrec/model.hpp"

namespace valrec {

struct AssociationRule {
  std::vector<FieldValuePair> antecedent;
  FieldValuePair consequent;
  std::uint32_t support = 0;
  double confidence = 0.0;
  std::string template_id;

  friend bool operator==(const AssociationRule&, const AssociationRule&) = default;
};

struct MiningParams {
  std::uint32_t min_support = 5;
  double min_confidence = 0.3;
  std::optional<std::size_t> max_antecedent_size;
};

// Throws InvalidParams on out-of-range thresholds.
void validate_params(const MiningParams& params);

using ItemId = std::uint32_t;
// Sorted ascending, no repeats.
using Itemset = std::vector<ItemId>;

struct ItemsetHash {
  std::size_t operator()(const Itemset& s) const noexcept {
    std::size_t h = s.size();
    for (ItemId i : s) h ^= i + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

// Frequent items of one mining run. Ids follow PairKey order, so an Itemset
// sorted by id is also sorted by pair identity.
class ItemCatalog {
 public:
  std::size_t size() const noexcept { return keys_.size(); }
  const PairKey& key(ItemId id) const { return keys_[id]; }
  // Surface form observed most often for this identity (ties: smallest).
  const FieldValuePair& representative(ItemId id) const { return representatives_[id]; }
  std::optional<ItemId> find(const PairKey& key) const;

 private:
  friend class AprioriMiner;
  std::vector<PairKey> keys_;
  std::vector<FieldValuePair> representatives_;
};

struct FrequentItemsets {
  std::string template_id;
  std::size_t instance_count = 0;
  ItemCatalog catalog;
  std::unordered_map<Itemset, std::uint32_t, ItemsetHash> support;

  // The same result keyed by pair identities; convenient for inspection and tests.
  std::map<std::vector<PairKey>, std::uint32_t> by_key() const;
};

// All itemsets of `template_id` instances with support >= min_support.
// `max_itemset_size` of 0 means unbounded. Throws UnknownTemplate.
FrequentItemsets frequent_itemsets(const InstanceRepository& repo, const std::string& template_id,
                                   std::uint32_t min_support, const MappingRepository& mappings,
                                   std::size_t max_itemset_size = 0);

// Rules (S \ {p}) -> p for every frequent S with |S| >= 2 and p in S whose
// confidence reaches `min_confidence`. Sorted by confidence desc, support
// desc, antecedent size, then pair identities.
std::vector<AssociationRule> generate_rules(const FrequentItemsets& itemsets, double min_confidence);

// Number of rules X -> Y with any non-empty consequent Y that reach
// `min_confidence`; the single-consequent rules are a subset of these.
std::size_t count_all_rules(const FrequentItemsets& itemsets, double min_confidence);

std::vector<AssociationRule> mine_rules(const InstanceRepository& repo, const std::string& template_id,
                                        const MiningParams& params, const MappingRepository& mappings);

// Mines every template in the repository and concatenates the rule sets in
// template id order.
std::vector<AssociationRule> mine_all_templates(const InstanceRepository& repo, const MiningParams& params,
                                                const MappingRepository& mappings);

}  // namespace valrec
