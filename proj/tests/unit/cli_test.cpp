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

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "valrec/engine.hpp"
#include "valrec/service.hpp"

namespace {

namespace fs = std::filesystem;

const fs::path kData = VALREC_TEST_DATA;

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(VALREC_CLI) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("valrec-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string store() const { return (dir_ / "store").string(); }
  fs::path dir_;
};

TEST_F(Cli, TrainThenRecommend) {
  auto t = run("train --instances " + (kData / "meningitis.jsonl").string() + " --store " + store() +
               " --min-support 1 --min-confidence 0.6");
  ASSERT_EQ(t.status, 0) << t.out;
  EXPECT_NE(t.out.find("Experiment"), std::string::npos);

  auto r = run("recommend --store " + store() + " --target tissue --context disease=meningitis");
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("brain"), std::string::npos);
  EXPECT_NE(r.out.find("100%"), std::string::npos);
  EXPECT_NE(r.out.find("score 1.0000"), std::string::npos);

  auto j = run("recommend --store " + store() + " --target tissue --context disease=meningitis --json");
  ASSERT_EQ(j.status, 0) << j.out;
  const auto parsed = nlohmann::json::parse(j.out);
  ASSERT_EQ(parsed.size(), 1u);
  EXPECT_EQ(parsed[0]["valueLabel"], "brain");
}

TEST_F(Cli, MatchesHttpHandler) {
  ASSERT_EQ(run("train --instances " + (kData / "pancreas_instances.jsonl").string() + " --store " + store() +
                " --min-support 2")
                .status,
            0);
  const std::string obo = "http://purl.obolibrary.org/obo/";
  auto r = run("recommend --store " + store() + " --target 'source tissue[" + obo + "UBERON_0000479]' --context 'sex[" +
               obo + "PATO_0000047]=male[" + obo + "PATO_0000384]' --json");
  ASSERT_EQ(r.status, 0) << r.out;
  const auto cli = nlohmann::json::parse(r.out);

  const auto state = valrec::load_store(store(), std::make_shared<const valrec::MappingRepository>());
  const auto http = nlohmann::json::parse(
      valrec::handle_recommend(*state, nlohmann::json{{"targetField", {{"fieldLabel", "source tissue"},
                                                                        {"fieldType", obo + "UBERON_0000479"}}},
                                                      {"context", {{{"fieldLabel", "sex"},
                                                                    {"fieldType", obo + "PATO_0000047"},
                                                                    {"valueLabel", "male"},
                                                                    {"valueType", obo + "PATO_0000384"}}}}}
                                             .dump())
          .body)["recommendations"];
  ASSERT_EQ(cli.size(), http.size());
  ASSERT_FALSE(cli.empty());
  for (std::size_t i = 0; i < cli.size(); ++i) {
    EXPECT_EQ(cli[i]["valueLabel"], http[i]["valueLabel"]);
    EXPECT_EQ(cli[i]["score"], http[i]["score"]);
    EXPECT_EQ(cli[i]["rank"], http[i]["rank"]);
  }
}

TEST_F(Cli, UnknownFieldIsEmptyButSucceeds) {
  ASSERT_EQ(run("train --instances " + (kData / "meningitis.jsonl").string() + " --store " + store() +
                " --min-support 1")
                .status,
            0);
  auto r = run("recommend --store " + store() + " --target ethnicity");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("no suggestions"), std::string::npos);
}

TEST_F(Cli, CrossTemplateWithMappings) {
  const std::string maps = (kData / "pancreas_mappings.jsonl").string();
  ASSERT_EQ(run("train --instances " + (kData / "pancreas_instances.jsonl").string() + " --store " + store() +
                " --mappings " + maps)
                .status,
            0);
  const std::string target = "'tissue[http://ncicb.nci.nih.gov/xml/owl/EVS/Thesaurus.owl#C12801]'";
  const std::string ctx =
      "'cell type[http://www.ebi.ac.uk/efo/EFO_0000324]=pancreatic alpha "
      "cell[http://purl.obolibrary.org/obo/BTO_0000990]'";
  auto r = run("recommend --store " + store() + " --mappings " + maps + " --target " + target + " --context " + ctx);
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_EQ(r.out.rfind("  1  pancreas", 0), 0u) << r.out;
}

TEST_F(Cli, EvaluateWritesReports) {
  const auto out = dir_ / "eval";
  auto r = run("evaluate --instances " + (kData / "pancreas_instances.jsonl").string() +
               " --min-support 2 --seed 3 --out " + out.string());
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_TRUE(fs::exists(out / "report.json"));
  EXPECT_TRUE(fs::exists(out / "report.csv"));
  EXPECT_TRUE(fs::exists(out / "executions.jsonl"));
}

TEST_F(Cli, ConfigFile) {
  std::ofstream(dir_ / "train.toml") << "[train]\n"
                                     << "instances = \"" << (kData / "meningitis.jsonl").string() << "\"\n"
                                     << "store = \"" << store() << "\"\n"
                                     << "min-support = 1\n";
  auto r = run("--config " + (dir_ / "train.toml").string() + " train");
  EXPECT_EQ(r.status, 0) << r.out;
}

TEST_F(Cli, Errors) {
  EXPECT_NE(run("").status, 0);
  EXPECT_NE(run("recommend --store " + store() + " --target tissue").status, 0);
  EXPECT_NE(run("train --instances " + (kData / "meningitis.jsonl").string() + " --store " + store() +
                " --min-confidence 2")
                .status,
            0);
  ASSERT_EQ(run("train --instances " + (kData / "meningitis.jsonl").string() + " --store " + store() +
                " --min-support 1")
                .status,
            0);
  EXPECT_NE(run("recommend --store " + store() + " --target tissue --context tissue=brain").status, 0);
  EXPECT_NE(run("recommend --store " + store() + " --target tissue --context nonsense").status, 0);
}

}  // namespace
