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

#include "valrec/mining.hpp"

#include <algorithm>
#include <tuple>
#include <unordered_map>
#include <utility>

namespace valrec {

void validate_params(const MiningParams& params) {
  if (params.min_support < 1) throw InvalidParams("minimum support must be >= 1");
  if (!(params.min_confidence > 0.0 && params.min_confidence <= 1.0)) {
    throw InvalidParams("minimum confidence must be in (0, 1]");
  }
  if (params.max_antecedent_size && *params.max_antecedent_size < 1) {
    throw InvalidParams("maximum antecedent size must be >= 1");
  }
}

std::optional<ItemId> ItemCatalog::find(const PairKey& key) const {
  auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
  if (it == keys_.end() || *it != key) return std::nullopt;
  return static_cast<ItemId>(it - keys_.begin());
}

std::map<std::vector<PairKey>, std::uint32_t> FrequentItemsets::by_key() const {
  std::map<std::vector<PairKey>, std::uint32_t> out;
  for (const auto& [items, count] : support) {
    std::vector<PairKey> keys;
    keys.reserve(items.size());
    for (ItemId id : items) keys.push_back(catalog.key(id));
    out.emplace(std::move(keys), count);
  }
  return out;
}

namespace {

using TidList = std::vector<std::uint32_t>;

TidList intersect(const TidList& a, const TidList& b) {
  TidList out;
  out.reserve(std::min(a.size(), b.size()));
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

struct LevelEntry {
  Itemset items;
  TidList tids;
};

}  // namespace

class AprioriMiner {
 public:
  AprioriMiner(std::uint32_t min_support, std::size_t max_size)
      : min_support_(min_support), max_size_(max_size) {}

  FrequentItemsets run(const InstanceRepository& repo, const std::string& template_id,
                       const MappingRepository& mappings) {
    FrequentItemsets result;
    result.template_id = template_id;

    std::vector<std::vector<PairKey>> transactions;
    std::unordered_map<PairKey, ItemStats> stats;
    for (const auto& raw : repo) {
      if (raw.template_id != template_id) continue;
      const TemplateInstance instance = validate_instance(raw, mappings);
      std::vector<PairKey> keys;
      keys.reserve(instance.pairs.size());
      for (const auto& pair : instance.pairs) {
        PairKey key = pair_key(pair, mappings);
        auto& s = stats[key];
        ++s.count;
        ++s.forms[pair];
        keys.push_back(std::move(key));
      }
      transactions.push_back(std::move(keys));
    }
    if (transactions.empty()) throw UnknownTemplate(template_id);
    result.instance_count = transactions.size();

    build_catalog(stats, result.catalog);
    if (result.catalog.size() == 0) return result;

    // Field ordinal per item; two items of one field never co-occur.
    std::vector<std::uint32_t> field_of(result.catalog.size());
    {
      std::uint32_t ordinal = 0;
      for (ItemId id = 0; id < result.catalog.size(); ++id) {
        if (id > 0 && result.catalog.key(id).field != result.catalog.key(id - 1).field) ++ordinal;
        field_of[id] = ordinal;
      }
    }

    std::vector<TidList> item_tids(result.catalog.size());
    for (std::uint32_t tid = 0; tid < transactions.size(); ++tid) {
      for (const auto& key : transactions[tid]) {
        if (auto id = result.catalog.find(key)) item_tids[*id].push_back(tid);
      }
    }

    std::vector<LevelEntry> level;
    for (ItemId id = 0; id < result.catalog.size(); ++id) {
      result.support.emplace(Itemset{id}, static_cast<std::uint32_t>(item_tids[id].size()));
      level.push_back({Itemset{id}, std::move(item_tids[id])});
    }

    for (std::size_t k = 2; !level.empty() && (max_size_ == 0 || k <= max_size_); ++k) {
      level = next_level(level, field_of, result.support);
    }
    return result;
  }

 private:
  struct ItemStats {
    std::uint32_t count = 0;
    std::map<FieldValuePair, std::uint32_t> forms;
  };

  void build_catalog(const std::unordered_map<PairKey, ItemStats>& stats, ItemCatalog& catalog) const {
    std::vector<const std::pair<const PairKey, ItemStats>*> frequent;
    for (const auto& entry : stats) {
      if (entry.second.count >= min_support_) frequent.push_back(&entry);
    }
    std::sort(frequent.begin(), frequent.end(), [](auto* a, auto* b) { return a->first < b->first; });
    for (const auto* entry : frequent) {
      catalog.keys_.push_back(entry->first);
      const FieldValuePair* best = nullptr;
      std::uint32_t best_count = 0;
      // std::map iterates in ascending order, so the first maximum is the smallest form.
      for (const auto& [form, n] : entry->second.forms) {
        if (n > best_count) {
          best = &form;
          best_count = n;
        }
      }
      catalog.representatives_.push_back(*best);
    }
  }

  // Joins (k-1)-itemsets sharing their first k-2 items, prunes candidates
  // with an infrequent (k-1)-subset and counts the survivors by tid-list
  // intersection.
  std::vector<LevelEntry> next_level(const std::vector<LevelEntry>& level,
                                     const std::vector<std::uint32_t>& field_of,
                                     std::unordered_map<Itemset, std::uint32_t, ItemsetHash>& support) const {
    std::vector<LevelEntry> next;
    const std::size_t prefix_len = level.front().items.size() - 1;
    Itemset subset;
    std::size_t group_begin = 0;
    while (group_begin < level.size()) {
      std::size_t group_end = group_begin + 1;
      while (group_end < level.size() &&
             std::equal(level[group_begin].items.begin(), level[group_begin].items.begin() + prefix_len,
                        level[group_end].items.begin())) {
        ++group_end;
      }
      for (std::size_t i = group_begin; i < group_end; ++i) {
        const ItemId a = level[i].items.back();
        for (std::size_t j = i + 1; j < group_end; ++j) {
          const ItemId b = level[j].items.back();
          if (field_of[a] == field_of[b]) continue;

          Itemset candidate = level[i].items;
          candidate.push_back(b);

          bool all_subsets_frequent = true;
          for (std::size_t drop = 0; drop + 2 < candidate.size() && all_subsets_frequent; ++drop) {
            subset.clear();
            for (std::size_t x = 0; x < candidate.size(); ++x) {
              if (x != drop) subset.push_back(candidate[x]);
            }
            all_subsets_frequent = support.contains(subset);
          }
          if (!all_subsets_frequent) continue;

          TidList tids = intersect(level[i].tids, level[j].tids);
          if (tids.size() < min_support_) continue;
          support.emplace(candidate, static_cast<std::uint32_t>(tids.size()));
          next.push_back({std::move(candidate), std::move(tids)});
        }
      }
      group_begin = group_end;
    }
    return next;
  }

  std::uint32_t min_support_;
  std::size_t max_size_;
};

FrequentItemsets frequent_itemsets(const InstanceRepository& repo, const std::string& template_id,
                                   std::uint32_t min_support, const MappingRepository& mappings,
                                   std::size_t max_itemset_size) {
  if (min_support < 1) throw InvalidParams("minimum support must be >= 1");
  return AprioriMiner(min_support, max_itemset_size).run(repo, template_id, mappings);
}

std::vector<AssociationRule> generate_rules(const FrequentItemsets& itemsets, double min_confidence) {
  struct Candidate {
    Itemset antecedent;
    ItemId consequent;
    AssociationRule rule;
  };
  std::vector<Candidate> candidates;
  Itemset antecedent;
  for (const auto& [items, joint] : itemsets.support) {
    if (items.size() < 2) continue;
    for (std::size_t p = 0; p < items.size(); ++p) {
      antecedent.clear();
      for (std::size_t x = 0; x < items.size(); ++x) {
        if (x != p) antecedent.push_back(items[x]);
      }
      const std::uint32_t antecedent_support = itemsets.support.at(antecedent);
      const double confidence = static_cast<double>(joint) / static_cast<double>(antecedent_support);
      if (confidence < min_confidence) continue;

      AssociationRule rule;
      rule.antecedent.reserve(antecedent.size());
      for (ItemId id : antecedent) rule.antecedent.push_back(itemsets.catalog.representative(id));
      rule.consequent = itemsets.catalog.representative(items[p]);
      rule.support = joint;
      rule.confidence = confidence;
      rule.template_id = itemsets.template_id;
      candidates.push_back({antecedent, items[p], std::move(rule)});
    }
  }

  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.rule.confidence != b.rule.confidence) return a.rule.confidence > b.rule.confidence;
    if (a.rule.support != b.rule.support) return a.rule.support > b.rule.support;
    if (a.antecedent.size() != b.antecedent.size()) return a.antecedent.size() < b.antecedent.size();
    return std::tie(a.antecedent, a.consequent) < std::tie(b.antecedent, b.consequent);
  });

  std::vector<AssociationRule> rules;
  rules.reserve(candidates.size());
  for (auto& c : candidates) rules.push_back(std::move(c.rule));
  return rules;
}

std::size_t count_all_rules(const FrequentItemsets& itemsets, double min_confidence) {
  std::size_t total = 0;
  Itemset antecedent;
  for (const auto& [items, joint] : itemsets.support) {
    const std::size_t n = items.size();
    if (n < 2 || n > 30) continue;
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    // `mask` selects the antecedent; it must be a non-empty proper subset.
    for (std::uint32_t mask = 1; mask < full; ++mask) {
      antecedent.clear();
      for (std::size_t x = 0; x < n; ++x) {
        if (mask & (std::uint32_t{1} << x)) antecedent.push_back(items[x]);
      }
      const double confidence =
          static_cast<double>(joint) / static_cast<double>(itemsets.support.at(antecedent));
      if (confidence >= min_confidence) ++total;
    }
  }
  return total;
}

std::vector<AssociationRule> mine_rules(const InstanceRepository& repo, const std::string& template_id,
                                        const MiningParams& params, const MappingRepository& mappings) {
  validate_params(params);
  const std::size_t max_itemset = params.max_antecedent_size ? *params.max_antecedent_size + 1 : 0;
  return generate_rules(frequent_itemsets(repo, template_id, params.min_support, mappings, max_itemset),
                        params.min_confidence);
}

std::vector<AssociationRule> mine_all_templates(const InstanceRepository& repo, const MiningParams& params,
                                                const MappingRepository& mappings) {
  std::vector<AssociationRule> all;
  for (const auto& id : repo.template_ids()) {
    auto rules = mine_rules(repo, id, params, mappings);
    all.insert(all.end(), std::make_move_iterator(rules.begin()), std::make_move_iterator(rules.end()));
  }
  return all;
}

}  // namespace valrec
