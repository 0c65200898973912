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

#include "valrec/rule_index.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

namespace valrec {

RuleIndex::RuleIndex(std::vector<AssociationRule> rules, std::shared_ptr<const MappingRepository> mappings)
    : rules_(std::move(rules)), mappings_(std::move(mappings)) {
  if (!mappings_) mappings_ = std::make_shared<const MappingRepository>();
  antecedent_keys_.reserve(rules_.size());
  consequent_value_keys_.reserve(rules_.size());
  consequent_sort_labels_.reserve(rules_.size());
  for (std::size_t id = 0; id < rules_.size(); ++id) {
    const auto& rule = rules_[id];
    std::vector<PairKey> keys;
    keys.reserve(rule.antecedent.size());
    for (const auto& pair : rule.antecedent) keys.push_back(pair_key(pair, *mappings_));
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    antecedent_keys_.push_back(std::move(keys));
    consequent_value_keys_.push_back(value_key(rule.consequent.value, *mappings_));
    consequent_sort_labels_.push_back(normalize_label(rule.consequent.value.label));
    by_consequent_field_[field_key(rule.consequent.field, *mappings_)].push_back(id);
  }
}

std::span<const std::size_t> RuleIndex::select_ids(const FieldSlot& target) const {
  return select_ids(field_key(target, *mappings_));
}

std::span<const std::size_t> RuleIndex::select_ids(const MatchKey& target_field) const {
  auto it = by_consequent_field_.find(target_field);
  if (it == by_consequent_field_.end()) return {};
  return it->second;
}

RuleIndex build_index(std::vector<AssociationRule> rules, std::shared_ptr<const MappingRepository> mappings) {
  return RuleIndex(std::move(rules), std::move(mappings));
}

RuleIndex build_index(std::vector<AssociationRule> rules, const MappingRepository& mappings) {
  return RuleIndex(std::move(rules), std::make_shared<const MappingRepository>(mappings));
}

std::vector<const AssociationRule*> select_rules(const RuleIndex& index, const FieldSlot& target) {
  std::vector<const AssociationRule*> out;
  for (std::size_t id : index.select_ids(target)) out.push_back(&index.rules()[id]);
  return out;
}

double jaccard(std::span<const PairKey> a, std::span<const PairKey> b) {
  std::size_t common = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++common;
      ++ia;
      ++ib;
    }
  }
  const std::size_t united = a.size() + b.size() - common;
  if (united == 0) return 0.0;
  return static_cast<double>(common) / static_cast<double>(united);
}

std::vector<PairKey> context_keys(const Context& context, const MappingRepository& mappings) {
  std::vector<PairKey> keys;
  keys.reserve(context.pairs.size());
  for (const auto& pair : context.pairs) keys.push_back(pair_key(pair, mappings));
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

double context_matching_score(const AssociationRule& rule, const Context& context,
                              const MappingRepository& mappings) {
  std::vector<PairKey> antecedent;
  for (const auto& pair : rule.antecedent) antecedent.push_back(pair_key(pair, mappings));
  std::sort(antecedent.begin(), antecedent.end());
  antecedent.erase(std::unique(antecedent.begin(), antecedent.end()), antecedent.end());
  return jaccard(antecedent, context_keys(context, mappings));
}

namespace {

using ojson = nlohmann::ordered_json;

ojson term_or_null(const std::optional<TermRef>& t) {
  return t ? ojson(t->uri()) : ojson(nullptr);
}

ojson mapping_array(const std::optional<TermRef>& t, const MappingRepository& mappings) {
  ojson arr = ojson::array();
  if (!t) return arr;
  for (const auto& other : mappings.equivalent_terms(*t)) {
    if (other != *t) arr.push_back(other.uri());
  }
  return arr;
}

ojson rule_pair_to_json(const FieldValuePair& p, const MappingRepository& mappings) {
  ojson j;
  j["fieldLabel"] = p.field.label;
  j["fieldType"] = term_or_null(p.field.type);
  j["fieldTypeMappings"] = mapping_array(p.field.type, mappings);
  j["fieldValueLabel"] = p.value.label;
  j["fieldValueType"] = term_or_null(p.value.type);
  j["fieldValueMappings"] = mapping_array(p.value.type, mappings);
  return j;
}

std::optional<TermRef> optional_term(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return parse_optional_term(it->get<std::string>());
}

FieldValuePair rule_pair_from_json(const nlohmann::json& j) {
  FieldValuePair p;
  p.field.label = j.at("fieldLabel").get<std::string>();
  p.field.type = optional_term(j, "fieldType");
  p.value.label = j.at("fieldValueLabel").get<std::string>();
  p.value.type = optional_term(j, "fieldValueType");
  if (normalize_label(p.field.label).empty() || normalize_label(p.value.label).empty()) {
    throw MalformedRecord("empty field or value label in rule");
  }
  return p;
}

}  // namespace

void save_rules(std::ostream& out, const std::vector<AssociationRule>& rules, const MappingRepository& mappings) {
  for (const auto& rule : rules) {
    ojson j;
    j["antecedent"] = ojson::array();
    for (const auto& p : rule.antecedent) j["antecedent"].push_back(rule_pair_to_json(p, mappings));
    j["consequent"] = ojson::array({rule_pair_to_json(rule.consequent, mappings)});
    j["support"] = rule.support;
    j["confidence"] = rule.confidence;
    j["templateId"] = rule.template_id;
    out << j.dump() << '\n';
  }
}

std::vector<AssociationRule> load_rules(std::istream& in) {
  std::vector<AssociationRule> rules;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      AssociationRule rule;
      for (const auto& p : j.at("antecedent")) rule.antecedent.push_back(rule_pair_from_json(p));
      const auto& consequent = j.at("consequent");
      if (!consequent.is_array() || consequent.size() != 1) {
        throw MalformedRecord("consequent must hold exactly one pair");
      }
      rule.consequent = rule_pair_from_json(consequent.front());
      rule.support = j.at("support").get<std::uint32_t>();
      rule.confidence = j.at("confidence").get<double>();
      rule.template_id = j.at("templateId").get<std::string>();
      if (rule.antecedent.empty()) throw MalformedRecord("antecedent is empty");
      if (rule.support < 1) throw MalformedRecord("support must be >= 1");
      if (!(rule.confidence > 0.0 && rule.confidence <= 1.0)) {
        throw MalformedRecord("confidence must be in (0, 1]");
      }
      rules.push_back(std::move(rule));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(line_no, e.what());
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return rules;
}

}  // namespace valrec
