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

// Training pipeline, on-disk rule store, and the immutable engine state that
// the CLI and the HTTP service both query.
//
// A store is a directory holding rules.jsonl (one rule per line) and
// manifest.json (mining parameters, per-template counts, field inventories).

#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "valrec/mining.hpp"
#include "valrec/recommender.hpp"
#include "valrec/rule_index.hpp"

namespace valrec {

struct TemplateSummary {
  std::string template_id;
  std::size_t train_count = 0;
  std::size_t frequent_itemsets = 0;
  std::size_t rules_generated = 0;  // any consequent size
  std::size_t rules_kept = 0;       // single-pair consequent
  double seconds = 0.0;
  std::vector<FieldSlot> fields;    // distinct fields, first-seen order
};

struct Manifest {
  MiningParams params;
  std::vector<TemplateSummary> templates;
  std::size_t mapping_classes = 0;
  double wall_seconds = 0.0;

  TrainCounts train_counts() const;
  std::size_t total_rules() const;
};

nlohmann::ordered_json manifest_to_json(const Manifest& manifest);
Manifest manifest_from_json(const nlohmann::json& j);

struct TrainResult {
  std::vector<AssociationRule> rules;
  Manifest manifest;
};

TrainResult train(const InstanceRepository& repo, const MiningParams& params, const MappingRepository& mappings);

void write_store(const std::filesystem::path& dir, const TrainResult& result, const MappingRepository& mappings);

struct EngineState {
  std::shared_ptr<const RuleIndex> index;
  TrainCounts train_counts;
  std::vector<TemplateSummary> templates;
  nlohmann::json config;

  const MappingRepository& mappings() const { return index->mappings(); }
};

std::shared_ptr<const EngineState> make_state(std::vector<AssociationRule> rules, const Manifest& manifest,
                                              std::shared_ptr<const MappingRepository> mappings);
// Throws IoError / ParseError.
std::shared_ptr<const EngineState> load_store(const std::filesystem::path& dir,
                                              std::shared_ptr<const MappingRepository> mappings);

// The one query path used by every front end.
std::vector<Recommendation> recommend(const EngineState& state, const Context& context, const FieldSlot& target,
                                      const RecommendOptions& options = {});

// Holds the current state; readers take a snapshot, a reload swaps in a new
// one. Requests already holding a snapshot finish against the old state.
class Engine {
 public:
  explicit Engine(std::shared_ptr<const EngineState> state) : state_(std::move(state)) {}

  std::shared_ptr<const EngineState> snapshot() const {
    std::lock_guard lock(mu_);
    return state_;
  }

  void swap(std::shared_ptr<const EngineState> next) {
    std::lock_guard lock(mu_);
    state_ = std::move(next);
  }

 private:
  mutable std::mutex mu_;
  std::shared_ptr<const EngineState> state_;
};

}  // namespace valrec
