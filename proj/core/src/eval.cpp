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

#include "valrec/eval.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <memory>
#include <numeric>
#include <ostream>
#include <random>
#include <thread>
#include <unordered_map>

#include "valrec/recommender.hpp"
#include "valrec/rule_index.hpp"

namespace valrec {

namespace {

// Unbiased draw in [0, bound) that only relies on the engine's specified output.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

constexpr std::size_t kMaxSweepFields = 24;

}  // namespace

std::pair<InstanceRepository, InstanceRepository> split(const InstanceRepository& repo, const SplitSpec& spec) {
  if (repo.empty()) throw EmptyRepository();
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
    throw InvalidParams("train fraction must be in (0, 1)");
  }
  const std::size_t n = repo.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(spec.seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    std::swap(order[i], order[bounded(rng, i + 1)]);
  }
  // The epsilon absorbs representation error in products like 100 * 0.85.
  const auto cut = static_cast<std::size_t>(std::floor(static_cast<long double>(n) * spec.train_fraction + 1e-9L));

  InstanceRepository train;
  InstanceRepository test;
  for (std::size_t i = 0; i < n; ++i) {
    (i < cut ? train : test).add(repo.instances()[order[i]]);
  }
  return {std::move(train), std::move(test)};
}

std::span<const RankedValue> MajorityBaseline::ranking(const MatchKey& field) const {
  auto it = rankings_.find(field);
  if (it == rankings_.end()) return {};
  return it->second;
}

MajorityBaseline baseline_majority(const InstanceRepository& train, const MappingRepository& mappings) {
  struct Tally {
    std::size_t count = 0;
    std::map<ValueAtom, std::size_t> forms;
  };
  std::map<MatchKey, std::map<MatchKey, Tally>> tallies;
  for (const auto& instance : train) {
    for (const auto& pair : instance.pairs) {
      auto& t = tallies[field_key(pair.field, mappings)][value_key(pair.value, mappings)];
      ++t.count;
      ++t.forms[pair.value];
    }
  }

  std::map<MatchKey, std::vector<RankedValue>> rankings;
  for (auto& [field, values] : tallies) {
    struct Entry {
      RankedValue ranked;
      std::string sort_label;
      const MatchKey* key;
    };
    std::vector<Entry> entries;
    for (auto& [vkey, tally] : values) {
      auto best = std::max_element(tally.forms.begin(), tally.forms.end(),
                                   [](const auto& a, const auto& b) { return a.second < b.second; });
      entries.push_back({{best->first, tally.count}, normalize_label(best->first.label), &vkey});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
      if (a.ranked.count != b.ranked.count) return a.ranked.count > b.ranked.count;
      if (a.sort_label != b.sort_label) return a.sort_label < b.sort_label;
      return *a.key < *b.key;
    });
    auto& out = rankings[field];
    for (auto& e : entries) out.push_back(std::move(e.ranked));
  }
  return MajorityBaseline(std::move(rankings));
}

std::size_t rank_of(std::span<const ValueAtom> ranking, const ValueAtom& truth, const MappingRepository& mappings) {
  const MatchKey want = value_key(truth, mappings);
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    if (value_key(ranking[i], mappings) == want) return i + 1;
  }
  return 0;
}

double reciprocal_rank(std::span<const ValueAtom> ranking, const ValueAtom& truth, const MappingRepository& mappings) {
  const std::size_t r = rank_of(ranking, truth, mappings);
  return r == 0 ? 0.0 : 1.0 / static_cast<double>(r);
}

const std::vector<std::string>& default_eval_field_labels() {
  static const std::vector<std::string> kLabels = {"sex",       "organism part", "tissue",   "cell line",
                                                   "cell type", "disease",       "ethnicity"};
  return kLabels;
}

bool is_eval_field(const FieldSlot& field, std::span<const FieldSlot> eval_fields, const MappingRepository& mappings) {
  if (eval_fields.empty()) return true;
  const MatchKey key = field_key(field, mappings);
  const std::string label = normalize_label(field.label);
  return std::any_of(eval_fields.begin(), eval_fields.end(), [&](const FieldSlot& f) {
    return field_key(f, mappings) == key || normalize_label(f.label) == label;
  });
}

std::vector<SweepContext> context_sweep(const TemplateInstance& instance, const FieldSlot& target,
                                        std::span<const FieldSlot> eval_fields, const MappingRepository& mappings) {
  const MatchKey target_key = field_key(target, mappings);
  bool has_target = false;
  std::vector<const FieldValuePair*> sources;
  for (const auto& pair : instance.pairs) {
    if (field_key(pair.field, mappings) == target_key) {
      has_target = !normalize_label(pair.value.label).empty();
      continue;
    }
    if (is_eval_field(pair.field, eval_fields, mappings)) sources.push_back(&pair);
  }
  if (!has_target) throw TargetMissing(target.label);
  const std::size_t k = sources.size();
  if (k > kMaxSweepFields) {
    throw InvalidParams("context sweep over " + std::to_string(k) + " fields is too large");
  }

  std::vector<SweepContext> out;
  out.reserve(std::size_t{1} << k);
  std::vector<std::size_t> combo;
  for (std::size_t r = 0; r <= k; ++r) {
    combo.resize(r);
    std::iota(combo.begin(), combo.end(), 0);
    for (;;) {
      SweepContext sc;
      sc.size = r;
      for (std::size_t idx : combo) {
        sc.context.pairs.push_back(*sources[idx]);
        sc.mask |= std::uint64_t{1} << idx;
      }
      out.push_back(std::move(sc));

      // Advance to the next r-combination of {0..k-1} in lexicographic order.
      std::size_t i = r;
      while (i > 0 && combo[i - 1] == k - r + (i - 1)) --i;
      if (i == 0) break;
      ++combo[i - 1];
      for (std::size_t j = i; j < r; ++j) combo[j] = combo[j - 1] + 1;
    }
  }
  return out;
}

std::string method_name(Method m) {
  return m == Method::kRecommender ? "recommender" : "baseline";
}

Method parse_method(const std::string& name) {
  if (name == "recommender") return Method::kRecommender;
  if (name == "baseline") return Method::kBaseline;
  throw MalformedRecord("unknown method '" + name + "'");
}

double EvalReport::mrr(Method m, std::size_t context_size) const {
  auto it = by_context_size.find({m, context_size});
  return it == by_context_size.end() ? 0.0 : it->second.mrr();
}

void aggregate(EvalReport& report, std::span<const Execution> log) {
  report.by_context_size.clear();
  report.by_field.clear();
  report.overall.clear();
  for (const auto& e : log) {
    const double rr = e.reciprocal_rank();
    auto add = [rr](MrrCell& cell) {
      cell.rr_sum += rr;
      ++cell.n;
    };
    add(report.by_context_size[{e.method, e.context_size}]);
    add(report.by_field[{e.method, e.target}]);
    add(report.overall[e.method]);
  }
}

namespace {

std::vector<FieldSlot> resolve_eval_fields(const InstanceRepository& test, const EvalOptions& options,
                                           const MappingRepository& mappings) {
  if (!options.eval_fields.empty()) return options.eval_fields;
  std::vector<FieldSlot> defaults;
  for (const auto& label : default_eval_field_labels()) defaults.push_back({label, std::nullopt});
  for (const auto& instance : test) {
    for (const auto& pair : instance.pairs) {
      if (is_eval_field(pair.field, defaults, mappings)) return defaults;
    }
  }
  return {};
}

nlohmann::json slot_json(const FieldSlot& f) {
  nlohmann::json j;
  j["fieldLabel"] = f.label;
  j["fieldType"] = f.type ? nlohmann::json(f.type->uri()) : nlohmann::json(nullptr);
  return j;
}

}  // namespace

EvalReport evaluate(const InstanceRepository& train, const InstanceRepository& test, const MappingRepository& mappings,
                    const EvalOptions& options) {
  validate_params(options.params);
  auto shared_mappings = std::make_shared<const MappingRepository>(mappings);
  const RuleIndex index = build_index(mine_all_templates(train, options.params, mappings), shared_mappings);

  TrainCounts train_counts;
  for (const auto& instance : train) ++train_counts[instance.template_id];
  const MajorityBaseline baseline = baseline_majority(train, mappings);
  const std::vector<FieldSlot> eval_fields = resolve_eval_fields(test, options, mappings);

  auto run_instance = [&](std::size_t i, std::vector<Execution>& out) {
    const TemplateInstance& instance = test.instances()[i];
    std::vector<ValueAtom> ranking;
    for (const auto& target : instance.pairs) {
      if (!is_eval_field(target.field, eval_fields, mappings)) continue;
      const MatchKey target_key = field_key(target.field, mappings);
      const std::string target_name = target_key.str();

      ranking.clear();
      for (const auto& rv : baseline.ranking(target_key)) ranking.push_back(rv.value);
      const std::size_t baseline_rank = rank_of(ranking, target.value, mappings);

      for (const auto& sweep : context_sweep(instance, target.field, eval_fields, mappings)) {
        const auto recs = recommend(sweep.context, target.field, index, train_counts);
        ranking.clear();
        for (const auto& r : recs) ranking.push_back(r.value);
        const std::size_t rank = rank_of(ranking, target.value, mappings);
        out.push_back({i, target_name, sweep.mask, sweep.size, Method::kRecommender, rank});
        out.push_back({i, target_name, sweep.mask, sweep.size, Method::kBaseline, baseline_rank});
      }
    }
  };

  const std::size_t n = test.size();
  unsigned workers = options.workers ? options.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));
  std::vector<std::vector<Execution>> partial(workers);
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> threads;
    const std::size_t chunk = (n + workers - 1) / std::max(workers, 1u);
    for (unsigned w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        try {
          const std::size_t begin = std::min(n, w * chunk);
          const std::size_t end = std::min(n, begin + chunk);
          for (std::size_t i = begin; i < end; ++i) run_instance(i, partial[w]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  EvalReport report;
  report.test_instances = n;
  report.rule_count = index.rules().size();
  for (auto& part : partial) {
    report.log.insert(report.log.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  aggregate(report, report.log);

  report.config["minSupport"] = options.params.min_support;
  report.config["minConfidence"] = options.params.min_confidence;
  report.config["maxAntecedent"] = options.params.max_antecedent_size
                                       ? nlohmann::json(*options.params.max_antecedent_size)
                                       : nlohmann::json(nullptr);
  report.config["evalFields"] = nlohmann::json::array();
  for (const auto& f : eval_fields) report.config["evalFields"].push_back(slot_json(f));
  report.config["trainInstances"] = train.size();
  report.config["testInstances"] = n;
  report.config["mappingClasses"] = mappings.class_count();
  return report;
}

nlohmann::json report_to_json(const EvalReport& report) {
  using nlohmann::json;
  json j;
  j["config"] = report.config;
  j["ruleCount"] = report.rule_count;
  j["testInstances"] = report.test_instances;
  j["executions"] = report.log.size();
  j["byContextSize"] = json::array();
  for (const auto& [key, cell] : report.by_context_size) {
    j["byContextSize"].push_back(
        {{"method", method_name(key.first)}, {"contextSize", key.second}, {"mrr", cell.mrr()}, {"n", cell.n}});
  }
  j["byField"] = json::array();
  for (const auto& [key, cell] : report.by_field) {
    j["byField"].push_back({{"method", method_name(key.first)}, {"field", key.second}, {"mrr", cell.mrr()}, {"n", cell.n}});
  }
  j["overall"] = json::array();
  for (const auto& [method, cell] : report.overall) {
    j["overall"].push_back({{"method", method_name(method)}, {"mrr", cell.mrr()}, {"n", cell.n}});
  }
  return j;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_report_csv(std::ostream& out, const EvalReport& report) {
  out << "method,contextSize,field,mrr,n\n";
  auto row = [&out](Method m, const std::string& size, const std::string& field, const MrrCell& cell) {
    out << method_name(m) << ',' << size << ',' << csv_field(field) << ','
        << nlohmann::json(cell.mrr()).dump() << ',' << cell.n << '\n';
  };
  for (const auto& [key, cell] : report.by_context_size) row(key.first, std::to_string(key.second), "all", cell);
  for (const auto& [key, cell] : report.by_field) row(key.first, "all", key.second, cell);
  for (const auto& [method, cell] : report.overall) row(method, "all", "all", cell);
}

void write_execution_log(std::ostream& out, std::span<const Execution> log) {
  for (const auto& e : log) {
    nlohmann::ordered_json j;
    j["instance"] = e.instance;
    j["target"] = e.target;
    j["mask"] = e.mask;
    j["contextSize"] = e.context_size;
    j["method"] = method_name(e.method);
    j["rank"] = e.rank;
    out << j.dump() << '\n';
  }
}

std::vector<Execution> read_execution_log(std::istream& in) {
  std::vector<Execution> log;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      Execution e;
      e.instance = j.at("instance").get<std::size_t>();
      e.target = j.at("target").get<std::string>();
      e.mask = j.at("mask").get<std::uint64_t>();
      e.context_size = j.at("contextSize").get<std::size_t>();
      e.method = parse_method(j.at("method").get<std::string>());
      e.rank = j.at("rank").get<std::size_t>();
      log.push_back(std::move(e));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(line_no, e.what());
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return log;
}

}  // namespace valrec
