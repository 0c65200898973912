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

// Offline evaluation: seeded train/test split, majority-value baseline,
// reciprocal rank over every context subset of each test instance, and MRR
// aggregated by context size and by target field.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "valrec/mapping.hpp"
#include "valrec/mining.hpp"
#include "valrec/model.hpp"

namespace valrec {

struct SplitSpec {
  double train_fraction = 0.85;
  std::uint64_t seed = 0;
};

// Seeded uniform shuffle, then the first floor(n * train_fraction) instances
// train. Throws EmptyRepository, InvalidParams.
std::pair<InstanceRepository, InstanceRepository> split(const InstanceRepository& repo, const SplitSpec& spec);

struct RankedValue {
  ValueAtom value;
  std::size_t count = 0;
};

// Context-blind ranking of each field's values by training frequency.
class MajorityBaseline {
 public:
  MajorityBaseline() = default;
  explicit MajorityBaseline(std::map<MatchKey, std::vector<RankedValue>> rankings)
      : rankings_(std::move(rankings)) {}

  // Empty when the field never occurs in training.
  std::span<const RankedValue> ranking(const MatchKey& field) const;
  const std::map<MatchKey, std::vector<RankedValue>>& rankings() const noexcept { return rankings_; }

 private:
  std::map<MatchKey, std::vector<RankedValue>> rankings_;
};

// Counts by value identity; ties broken by normalized label ascending.
MajorityBaseline baseline_majority(const InstanceRepository& train, const MappingRepository& mappings);

// 1-based position of the first entry matching `truth` by value identity; 0 when absent.
std::size_t rank_of(std::span<const ValueAtom> ranking, const ValueAtom& truth, const MappingRepository& mappings);
// 1 / rank_of, or 0 when absent.
double reciprocal_rank(std::span<const ValueAtom> ranking, const ValueAtom& truth, const MappingRepository& mappings);

struct SweepContext {
  Context context;
  std::size_t size = 0;
  // Bit i set when the i-th eligible non-target field is in the context.
  std::uint64_t mask = 0;
};

// Default evaluation field labels; used when the caller passes none.
const std::vector<std::string>& default_eval_field_labels();

// True when `field` is one of `eval_fields`, by field identity or by
// normalized label. An empty list admits every field.
bool is_eval_field(const FieldSlot& field, std::span<const FieldSlot> eval_fields, const MappingRepository& mappings);

// Every subset of the instance's other populated evaluation fields, ordered
// by size and then lexicographically by field position. 2^k entries for k
// eligible fields. Throws TargetMissing.
std::vector<SweepContext> context_sweep(const TemplateInstance& instance, const FieldSlot& target,
                                        std::span<const FieldSlot> eval_fields, const MappingRepository& mappings);

enum class Method : unsigned char { kRecommender, kBaseline };
std::string method_name(Method m);
Method parse_method(const std::string& name);

// One recommendation run over one (test instance, target, context subset).
struct Execution {
  std::size_t instance = 0;
  std::string target;  // MatchKey::str() of the target field
  std::uint64_t mask = 0;
  std::size_t context_size = 0;
  Method method = Method::kRecommender;
  std::size_t rank = 0;  // 0 when the truth is absent

  double reciprocal_rank() const { return rank == 0 ? 0.0 : 1.0 / static_cast<double>(rank); }
  friend bool operator==(const Execution&, const Execution&) = default;
};

struct MrrCell {
  double rr_sum = 0.0;
  std::size_t n = 0;
  double mrr() const { return n == 0 ? 0.0 : rr_sum / static_cast<double>(n); }
  friend bool operator==(const MrrCell&, const MrrCell&) = default;
};

struct EvalReport {
  std::map<std::pair<Method, std::size_t>, MrrCell> by_context_size;
  std::map<std::pair<Method, std::string>, MrrCell> by_field;
  std::map<Method, MrrCell> overall;
  std::size_t test_instances = 0;
  std::size_t rule_count = 0;
  nlohmann::json config;
  std::vector<Execution> log;

  double mrr(Method m, std::size_t context_size) const;
};

struct EvalOptions {
  MiningParams params;
  std::vector<FieldSlot> eval_fields;  // empty: default labels, falling back to all fields
  unsigned workers = 0;                // 0: hardware concurrency
};

// Folds executions into report cells, summing in log order.
void aggregate(EvalReport& report, std::span<const Execution> log);

EvalReport evaluate(const InstanceRepository& train, const InstanceRepository& test, const MappingRepository& mappings,
                    const EvalOptions& options);

nlohmann::json report_to_json(const EvalReport& report);
// Header: method,contextSize,field,mrr,n. "all" marks an aggregated column.
void write_report_csv(std::ostream& out, const EvalReport& report);
void write_execution_log(std::ostream& out, std::span<const Execution> log);
// Throws ParseError.
std::vector<Execution> read_execution_log(std::istream& in);

}  // namespace valrec
