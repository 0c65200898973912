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

#include "valrec/engine.hpp"

#include <chrono>
#include <unordered_set>

#include "valrec/io.hpp"

namespace valrec {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

TrainCounts Manifest::train_counts() const {
  TrainCounts counts;
  for (const auto& t : templates) counts[t.template_id] = t.train_count;
  return counts;
}

std::size_t Manifest::total_rules() const {
  std::size_t total = 0;
  for (const auto& t : templates) total += t.rules_kept;
  return total;
}

nlohmann::ordered_json manifest_to_json(const Manifest& manifest) {
  nlohmann::ordered_json j;
  j["params"] = {{"minSupport", manifest.params.min_support},
                 {"minConfidence", manifest.params.min_confidence},
                 {"maxAntecedent", manifest.params.max_antecedent_size
                                       ? nlohmann::ordered_json(*manifest.params.max_antecedent_size)
                                       : nlohmann::ordered_json(nullptr)}};
  j["templates"] = nlohmann::ordered_json::array();
  for (const auto& t : manifest.templates) {
    nlohmann::ordered_json tj;
    tj["templateId"] = t.template_id;
    tj["trainCount"] = t.train_count;
    tj["frequentItemsets"] = t.frequent_itemsets;
    tj["rulesGenerated"] = t.rules_generated;
    tj["rulesKept"] = t.rules_kept;
    tj["seconds"] = t.seconds;
    tj["fields"] = nlohmann::ordered_json::array();
    for (const auto& f : t.fields) tj["fields"].push_back(slot_to_json(f));
    j["templates"].push_back(std::move(tj));
  }
  j["totalRules"] = manifest.total_rules();
  j["mappingClasses"] = manifest.mapping_classes;
  j["wallSeconds"] = manifest.wall_seconds;
  return j;
}

Manifest manifest_from_json(const nlohmann::json& j) {
  Manifest m;
  const auto& p = j.at("params");
  m.params.min_support = p.at("minSupport").get<std::uint32_t>();
  m.params.min_confidence = p.at("minConfidence").get<double>();
  if (p.contains("maxAntecedent") && !p.at("maxAntecedent").is_null()) {
    m.params.max_antecedent_size = p.at("maxAntecedent").get<std::size_t>();
  }
  for (const auto& tj : j.at("templates")) {
    TemplateSummary t;
    t.template_id = tj.at("templateId").get<std::string>();
    t.train_count = tj.at("trainCount").get<std::size_t>();
    t.frequent_itemsets = tj.value("frequentItemsets", std::size_t{0});
    t.rules_generated = tj.value("rulesGenerated", std::size_t{0});
    t.rules_kept = tj.value("rulesKept", std::size_t{0});
    t.seconds = tj.value("seconds", 0.0);
    for (const auto& f : tj.at("fields")) t.fields.push_back(slot_from_json(f));
    m.templates.push_back(std::move(t));
  }
  m.mapping_classes = j.value("mappingClasses", std::size_t{0});
  m.wall_seconds = j.value("wallSeconds", 0.0);
  return m;
}

TrainResult train(const InstanceRepository& repo, const MiningParams& params, const MappingRepository& mappings) {
  validate_params(params);
  const auto start = Clock::now();
  TrainResult result;
  result.manifest.params = params;
  result.manifest.mapping_classes = mappings.class_count();
  const std::size_t max_itemset = params.max_antecedent_size ? *params.max_antecedent_size + 1 : 0;

  for (const auto& id : repo.template_ids()) {
    const auto t0 = Clock::now();
    TemplateSummary summary;
    summary.template_id = id;

    std::unordered_set<MatchKey> seen_fields;
    for (const auto& instance : repo) {
      if (instance.template_id != id) continue;
      ++summary.train_count;
      for (const auto& pair : instance.pairs) {
        if (seen_fields.insert(field_key(pair.field, mappings)).second) summary.fields.push_back(pair.field);
      }
    }

    const FrequentItemsets itemsets = frequent_itemsets(repo, id, params.min_support, mappings, max_itemset);
    auto rules = generate_rules(itemsets, params.min_confidence);
    summary.frequent_itemsets = itemsets.support.size();
    summary.rules_generated = count_all_rules(itemsets, params.min_confidence);
    summary.rules_kept = rules.size();
    summary.seconds = seconds_since(t0);
    result.rules.insert(result.rules.end(), std::make_move_iterator(rules.begin()),
                        std::make_move_iterator(rules.end()));
    result.manifest.templates.push_back(std::move(summary));
  }
  result.manifest.wall_seconds = seconds_since(start);
  return result;
}

void write_store(const std::filesystem::path& dir, const TrainResult& result, const MappingRepository& mappings) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
  {
    auto out = open_output(dir / "rules.jsonl");
    save_rules(out, result.rules, mappings);
    if (!out) throw IoError("failed writing rules.jsonl");
  }
  auto out = open_output(dir / "manifest.json");
  out << manifest_to_json(result.manifest).dump(2) << '\n';
  if (!out) throw IoError("failed writing manifest.json");
}

std::shared_ptr<const EngineState> make_state(std::vector<AssociationRule> rules, const Manifest& manifest,
                                              std::shared_ptr<const MappingRepository> mappings) {
  auto state = std::make_shared<EngineState>();
  state->index = std::make_shared<const RuleIndex>(std::move(rules), std::move(mappings));
  state->train_counts = manifest.train_counts();
  state->templates = manifest.templates;
  state->config = manifest_to_json(manifest);
  return state;
}

std::shared_ptr<const EngineState> load_store(const std::filesystem::path& dir,
                                              std::shared_ptr<const MappingRepository> mappings) {
  std::vector<AssociationRule> rules;
  {
    auto in = open_input(dir / "rules.jsonl");
    rules = load_rules(in);
  }
  Manifest manifest;
  {
    auto in = open_input(dir / "manifest.json");
    try {
      manifest = manifest_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(1, std::string("manifest.json: ") + e.what());
    }
  }
  return make_state(std::move(rules), manifest, std::move(mappings));
}

std::vector<Recommendation> recommend(const EngineState& state, const Context& context, const FieldSlot& target,
                                      const RecommendOptions& options) {
  return recommend(context, target, *state.index, state.train_counts, options);
}

}  // namespace valrec
