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

#include <algorithm>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "support/fixtures.hpp"
#include "support/synthetic.hpp"
#include "valrec/eval.hpp"

namespace valrec {
namespace {

using testing::text_field;
using testing::text_pair;

InstanceRepository numbered(std::size_t n) {
  InstanceRepository repo;
  for (std::size_t i = 0; i < n; ++i) repo.add({"T", {text_pair("id", std::to_string(i))}});
  return repo;
}

TEST(Split, SizesUseFloor) {
  const auto [train, test] = split(numbered(100), {0.85, 1});
  EXPECT_EQ(train.size(), 85u);
  EXPECT_EQ(test.size(), 15u);
  const auto [train2, test2] = split(numbered(7), {0.85, 1});
  EXPECT_EQ(train2.size(), 5u);
  EXPECT_EQ(test2.size(), 2u);
}

TEST(Split, LargeCorpusSize) {
  const auto [train, test] = split(numbered(135187), {0.85, 42});
  EXPECT_EQ(train.size(), 114908u);
  EXPECT_EQ(test.size(), 20279u);
}

TEST(Split, DeterministicPermutation) {
  const auto repo = numbered(50);
  const auto a = split(repo, {0.8, 9});
  const auto b = split(repo, {0.8, 9});
  const auto c = split(repo, {0.8, 10});
  EXPECT_EQ(a.first.instances(), b.first.instances());
  EXPECT_EQ(a.second.instances(), b.second.instances());
  EXPECT_NE(a.first.instances(), c.first.instances());

  std::set<std::string> ids;
  for (const auto& i : a.first) ids.insert(i.pairs[0].value.label);
  for (const auto& i : a.second) ids.insert(i.pairs[0].value.label);
  EXPECT_EQ(ids.size(), 50u);
}

TEST(Split, RejectsBadInput) {
  EXPECT_THROW(split(InstanceRepository{}, {}), EmptyRepository);
  EXPECT_THROW(split(numbered(3), {0.0, 1}), InvalidParams);
  EXPECT_THROW(split(numbered(3), {1.5, 1}), InvalidParams);
}

TEST(Baseline, RanksByFrequency) {
  const auto b = baseline_majority(testing::meningitis_repository(), MappingRepository{});
  const auto tissue = b.ranking(field_key(text_field("tissue"), {}));
  ASSERT_EQ(tissue.size(), 2u);
  // brain and liver both appear three times; label order breaks the tie.
  EXPECT_EQ(tissue[0].value.label, "brain");
  EXPECT_EQ(tissue[0].count, 3u);
  const auto disease = b.ranking(field_key(text_field("disease"), {}));
  ASSERT_EQ(disease.size(), 3u);
  EXPECT_EQ(disease[0].value.label, "meningitis");
  EXPECT_EQ(disease[1].value.label, "liver cancer");
  EXPECT_EQ(disease[2].value.label, "cirrhosis");
  EXPECT_TRUE(b.ranking(field_key(text_field("ethnicity"), {})).empty());
}

TEST(ReciprocalRank, FirstSecondThirdAbsent) {
  const std::vector<ValueAtom> ranking = {{"brain", std::nullopt}, {"liver", std::nullopt}, {"heart", std::nullopt}};
  const MappingRepository m;
  EXPECT_DOUBLE_EQ(reciprocal_rank(ranking, {"Brain", std::nullopt}, m), 1.0);
  EXPECT_DOUBLE_EQ(reciprocal_rank(ranking, {"liver", std::nullopt}, m), 0.5);
  EXPECT_DOUBLE_EQ(reciprocal_rank(ranking, {"heart", std::nullopt}, m), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(reciprocal_rank(ranking, {"lung", std::nullopt}, m), 0.0);
  EXPECT_EQ(rank_of(ranking, {"lung", std::nullopt}, m), 0u);
}

TEST(ReciprocalRank, CreditsSynonyms) {
  const auto m = MappingRepository::from_records({{"a:1", "b:1"}});
  const std::vector<ValueAtom> ranking = {{"x", TermRef::parse("a:1")}};
  EXPECT_DOUBLE_EQ(reciprocal_rank(ranking, {"y", TermRef::parse("b:1")}, m), 1.0);
  EXPECT_DOUBLE_EQ(reciprocal_rank(ranking, {"y", TermRef::parse("b:1")}, {}), 0.0);
}

TemplateInstance six_fields() {
  return {"T",
          {text_pair("sex", "male"), text_pair("organism part", "liver"), text_pair("cell line", "HepG2"),
           text_pair("cell type", "hepatocyte"), text_pair("disease", "carcinoma"), text_pair("ethnicity", "x")}};
}

TEST(ContextSweep, BinomialPartition) {
  const auto sweep = context_sweep(six_fields(), text_field("disease"), {}, {});
  ASSERT_EQ(sweep.size(), 32u);
  std::map<std::size_t, std::size_t> by_size;
  std::set<std::uint64_t> masks;
  for (const auto& s : sweep) {
    ++by_size[s.size];
    masks.insert(s.mask);
    EXPECT_EQ(s.context.size(), s.size);
    for (const auto& p : s.context.pairs) EXPECT_NE(p.field.label, "disease");
  }
  EXPECT_EQ(by_size, (std::map<std::size_t, std::size_t>{{0, 1}, {1, 5}, {2, 10}, {3, 10}, {4, 5}, {5, 1}}));
  EXPECT_EQ(masks.size(), 32u);
  for (std::size_t i = 1; i < sweep.size(); ++i) EXPECT_LE(sweep[i - 1].size, sweep[i].size);
}

TEST(ContextSweep, LexicographicWithinSize) {
  const auto sweep = context_sweep(six_fields(), text_field("disease"), {}, {});
  // Size 1 contexts follow field order.
  EXPECT_EQ(sweep[1].context.pairs[0].field.label, "sex");
  EXPECT_EQ(sweep[5].context.pairs[0].field.label, "ethnicity");
  // First size-2 context is the first two fields.
  EXPECT_EQ(sweep[6].mask, 0b11u);
}

TEST(ContextSweep, RestrictsToEvalFields) {
  const std::vector<FieldSlot> fields = {text_field("sex"), text_field("disease"), text_field("cell type")};
  const auto sweep = context_sweep(six_fields(), text_field("disease"), fields, {});
  EXPECT_EQ(sweep.size(), 4u);
}

TEST(ContextSweep, MissingTarget) {
  EXPECT_THROW(context_sweep(six_fields(), text_field("tissue"), {}, {}), TargetMissing);
}

TEST(EvalField, DefaultLabels) {
  const auto& labels = default_eval_field_labels();
  EXPECT_EQ(labels.size(), 7u);
  EXPECT_NE(std::find(labels.begin(), labels.end(), "cell line"), labels.end());
}

TEST(Evaluate, ExecutionCountsAndCells) {
  const auto repo = testing::planted_corpus(300, 5);
  const auto [train, test] = split(repo, {0.85, 5});
  EvalOptions opts;
  opts.params = {3, 0.3, std::nullopt};
  opts.workers = 2;
  const auto report = evaluate(train, test, {}, opts);

  std::size_t expected = 0;
  for (const auto& inst : test) {
    if (!inst.pairs.empty()) expected += inst.pairs.size() * (std::size_t{1} << (inst.pairs.size() - 1));
  }
  EXPECT_EQ(report.log.size(), 2 * expected);
  EXPECT_EQ(report.overall.at(Method::kRecommender).n, expected);
  EXPECT_EQ(report.overall.at(Method::kBaseline).n, expected);
  for (const auto& [key, cell] : report.by_context_size) {
    EXPECT_GE(cell.mrr(), 0.0);
    EXPECT_LE(cell.mrr(), 1.0);
  }

  opts.workers = 1;
  const auto serial = evaluate(train, test, {}, opts);
  EXPECT_EQ(serial.log, report.log);
  EXPECT_EQ(serial.by_context_size, report.by_context_size);
}

TEST(Evaluate, LogRoundTripAndCsv) {
  const auto repo = testing::planted_corpus(120, 8);
  const auto [train, test] = split(repo, {0.85, 8});
  EvalOptions opts;
  opts.params = {2, 0.3, std::nullopt};
  const auto report = evaluate(train, test, {}, opts);

  std::stringstream log;
  write_execution_log(log, report.log);
  const auto back = read_execution_log(log);
  EXPECT_EQ(back, report.log);

  EvalReport again;
  aggregate(again, back);
  EXPECT_EQ(again.by_context_size, report.by_context_size);
  EXPECT_EQ(again.by_field, report.by_field);

  std::stringstream csv;
  write_report_csv(csv, report);
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "method,contextSize,field,mrr,n");

  const auto j = report_to_json(report);
  EXPECT_EQ(j["config"]["minSupport"], 2);
}

TEST(Method, NamesRoundTrip) {
  EXPECT_EQ(parse_method(method_name(Method::kBaseline)), Method::kBaseline);
  EXPECT_EQ(parse_method(method_name(Method::kRecommender)), Method::kRecommender);
  EXPECT_THROW(parse_method("oracle"), MalformedRecord);
}

}  // namespace
}  // namespace valrec
