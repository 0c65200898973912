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

// valrec: train rule stores, query them, run offline evaluations and serve
// recommendations over HTTP.

#include <csignal>
#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "valrec/engine.hpp"
#include "valrec/eval.hpp"
#include "valrec/io.hpp"
#include "valrec/service.hpp"

namespace fs = std::filesystem;

namespace {

struct MiningFlags {
  std::uint32_t min_support = 5;
  double min_confidence = 0.3;
  std::size_t max_antecedent = 0;

  valrec::MiningParams params() const {
    valrec::MiningParams p{min_support, min_confidence, std::nullopt};
    if (max_antecedent > 0) p.max_antecedent_size = max_antecedent;
    return p;
  }
};

void add_mining_flags(CLI::App* cmd, MiningFlags& f) {
  cmd->add_option("--min-support", f.min_support, "Minimum absolute support")->capture_default_str();
  cmd->add_option("--min-confidence", f.min_confidence, "Minimum confidence in (0, 1]")->capture_default_str();
  cmd->add_option("--max-antecedent", f.max_antecedent, "Largest antecedent size; 0 for no limit")
      ->capture_default_str();
}

valrec::MappingRepository read_mapping_file(const std::string& path) {
  if (path.empty()) return {};
  return valrec::load_mappings(path);
}

// "label" or "label[uri]".
valrec::FieldSlot parse_slot(const std::string& text) {
  const auto open = text.find('[');
  if (open != std::string::npos && !text.empty() && text.back() == ']') {
    return {text.substr(0, open), valrec::parse_optional_term(text.substr(open + 1, text.size() - open - 2))};
  }
  return {text, std::nullopt};
}

// "field=value" where either side may carry a "[uri]" suffix.
valrec::FieldValuePair parse_context_entry(const std::string& text) {
  // The field part ends at the first '=' outside brackets.
  int depth = 0;
  std::size_t eq = std::string::npos;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '[') ++depth;
    if (text[i] == ']') --depth;
    if (text[i] == '=' && depth == 0) {
      eq = i;
      break;
    }
  }
  if (eq == std::string::npos) throw valrec::InvalidParams("context entry must look like field=value: '" + text + "'");
  const valrec::FieldSlot field = parse_slot(text.substr(0, eq));
  const valrec::FieldSlot value = parse_slot(text.substr(eq + 1));
  return {field, {value.label, value.type}};
}

std::vector<valrec::FieldSlot> parse_field_list(const std::vector<std::string>& items) {
  std::vector<valrec::FieldSlot> out;
  for (const auto& s : items) out.push_back(parse_slot(s));
  return out;
}

valrec::IngestReport ingest(const std::string& path, const valrec::MappingRepository& m) {
  auto report = valrec::ingest_instances(path, m);
  for (const auto& w : report.warnings) std::cerr << path << ": " << w << '\n';
  return report;
}

int run_train(const std::string& instances, const std::string& store, const std::string& mappings_path,
              const MiningFlags& flags) {
  const auto params = flags.params();
  valrec::validate_params(params);
  const auto mappings = read_mapping_file(mappings_path);
  const auto report = ingest(instances, mappings);
  const auto result = valrec::train(report.repo, params, mappings);
  valrec::write_store(store, result, mappings);

  std::cout << "template                    instances   itemsets   generated       kept    seconds\n";
  for (const auto& t : result.manifest.templates) {
    std::cout << std::left << std::setw(26) << t.template_id << std::right << std::setw(11) << t.train_count
              << std::setw(11) << t.frequent_itemsets << std::setw(12) << t.rules_generated << std::setw(11)
              << t.rules_kept << std::setw(11) << std::fixed << std::setprecision(3) << t.seconds << '\n';
  }
  std::cout << "total rules: " << result.manifest.total_rules() << ", wall time " << std::fixed
            << std::setprecision(3) << result.manifest.wall_seconds << " s, store " << store << '\n';
  return 0;
}

int run_recommend(const std::string& store, const std::string& mappings_path, const std::string& target_text,
                  const std::vector<std::string>& context_items, const valrec::RecommendOptions& options,
                  bool as_json) {
  auto mappings = std::make_shared<const valrec::MappingRepository>(read_mapping_file(mappings_path));
  const auto state = valrec::load_store(store, mappings);
  valrec::Context context;
  for (const auto& item : context_items) {
    auto pair = parse_context_entry(item);
    if (valrec::normalize_label(pair.value.label).empty()) continue;
    context.pairs.push_back(std::move(pair));
  }
  const valrec::FieldSlot target = parse_slot(target_text);
  const auto recs = valrec::recommend(*state, context, target, options);

  if (as_json) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& r : recs) {
      out.push_back({{"rank", r.rank},
                     {"valueLabel", r.value.label},
                     {"valueType", r.value.type ? nlohmann::ordered_json(r.value.type->uri()) : nlohmann::ordered_json(nullptr)},
                     {"score", r.score},
                     {"percent", valrec::format_percent(r.score)},
                     {"support", r.support}});
    }
    std::cout << out.dump(2) << '\n';
    return 0;
  }
  if (recs.empty()) {
    std::cerr << "no suggestions for '" << target.label << "'\n";
    return 0;
  }
  for (const auto& r : recs) {
    std::cout << std::setw(3) << r.rank << "  " << r.value.label;
    if (r.value.type) std::cout << " <" << r.value.type->uri() << ">";
    std::cout << "  " << valrec::format_percent(r.score) << " (score " << std::fixed << std::setprecision(4)
              << r.score << ", support " << r.support << ")\n";
  }
  return 0;
}

struct EvalFlags {
  std::string instances;
  std::string test;
  std::string mappings;
  std::string out;
  double train_fraction = 0.85;
  std::uint64_t seed = 1;
  std::vector<std::string> fields;
  unsigned workers = 0;
};

int run_evaluate(const EvalFlags& f, const MiningFlags& mining) {
  const auto mappings = read_mapping_file(f.mappings);
  const auto all = ingest(f.instances, mappings);
  valrec::InstanceRepository train_repo;
  valrec::InstanceRepository test_repo;
  if (!f.test.empty()) {
    train_repo = all.repo;
    test_repo = ingest(f.test, mappings).repo;
  } else {
    std::tie(train_repo, test_repo) = valrec::split(all.repo, {f.train_fraction, f.seed});
  }

  valrec::EvalOptions opts;
  opts.params = mining.params();
  opts.eval_fields = parse_field_list(f.fields);
  opts.workers = f.workers;
  auto report = valrec::evaluate(train_repo, test_repo, mappings, opts);
  report.config["seed"] = f.seed;
  report.config["trainFraction"] = f.test.empty() ? nlohmann::json(f.train_fraction) : nlohmann::json(nullptr);

  std::cout << "train " << train_repo.size() << ", test " << test_repo.size() << ", rules " << report.rule_count
            << ", executions " << report.log.size() << '\n';
  std::cout << "context  recommender   baseline\n";
  std::size_t max_size = 0;
  for (const auto& [key, cell] : report.by_context_size) max_size = std::max(max_size, key.second);
  for (std::size_t k = 0; k <= max_size; ++k) {
    std::cout << std::setw(7) << k << std::setw(13) << std::fixed << std::setprecision(4)
              << report.mrr(valrec::Method::kRecommender, k) << std::setw(11)
              << report.mrr(valrec::Method::kBaseline, k) << '\n';
  }
  for (const auto& [method, cell] : report.overall) {
    std::cout << "overall " << valrec::method_name(method) << ": " << std::setprecision(4) << cell.mrr() << '\n';
  }

  if (!f.out.empty()) {
    std::error_code ec;
    fs::create_directories(f.out, ec);
    if (ec) throw valrec::IoError("cannot create '" + f.out + "': " + ec.message());
    {
      auto out = valrec::open_output(fs::path(f.out) / "report.json");
      out << valrec::report_to_json(report).dump(2) << '\n';
    }
    {
      auto out = valrec::open_output(fs::path(f.out) / "report.csv");
      valrec::write_report_csv(out, report);
    }
    auto out = valrec::open_output(fs::path(f.out) / "executions.jsonl");
    valrec::write_execution_log(out, report.log);
    std::cout << "wrote " << f.out << "/{report.json,report.csv,executions.jsonl}\n";
  }
  return 0;
}

valrec::HttpService* g_service = nullptr;

extern "C" void on_signal(int) {
  if (g_service) g_service->stop();
}

int run_serve(const std::string& store, const std::string& mappings_path, const std::string& bind) {
  const auto [host, port] = valrec::parse_bind_address(bind);
  auto loader = [store, mappings_path] {
    auto mappings = std::make_shared<const valrec::MappingRepository>(read_mapping_file(mappings_path));
    return valrec::load_store(store, mappings);
  };
  valrec::Engine engine(loader());
  valrec::HttpService service(engine, loader);
  const int bound = service.bind(host, port);
  std::cout << "listening on " << host << ":" << bound << std::endl;
  g_service = &service;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  service.listen();
  g_service = nullptr;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metadata value recommendation from association rules"};
  app.set_config("--config", "", "Read options from a TOML/INI file");
  app.require_subcommand(1);

  MiningFlags mining;
  std::string instances;
  std::string store;
  std::string mappings;

  auto* train_cmd = app.add_subcommand("train", "Mine rules from instances into a store directory");
  train_cmd->add_option("--instances", instances, "Instance file (JSON lines)")->required();
  train_cmd->add_option("--store", store, "Output store directory")->required();
  train_cmd->add_option("--mappings", mappings, "Term mapping file (JSON lines)");
  add_mining_flags(train_cmd, mining);

  std::string target;
  std::vector<std::string> context;
  double score_cutoff = -1.0;
  std::size_t max_results = 0;
  bool as_json = false;
  auto* rec_cmd = app.add_subcommand("recommend", "Rank values for a target field");
  rec_cmd->add_option("--store", store, "Store directory")->required();
  rec_cmd->add_option("--mappings", mappings, "Term mapping file (JSON lines)");
  rec_cmd->add_option("--target", target, "Target field: label or label[uri]")->required();
  rec_cmd->add_option("--context", context, "Entered value: field=value, each side optionally label[uri]");
  rec_cmd->add_option("--score-cutoff", score_cutoff, "Drop suggestions scoring below this")
      ->check(CLI::Range(0.0, 1.0));
  rec_cmd->add_option("--max-results", max_results, "Keep at most this many suggestions")
      ->check(CLI::PositiveNumber);
  rec_cmd->add_flag("--json", as_json, "Print JSON");

  EvalFlags eval;
  auto* eval_cmd = app.add_subcommand("evaluate", "Measure MRR against the majority baseline");
  eval_cmd->add_option("--instances", eval.instances, "Instance file; split unless --test is given")->required();
  eval_cmd->add_option("--test", eval.test, "Held-out instance file");
  eval_cmd->add_option("--mappings", eval.mappings, "Term mapping file (JSON lines)");
  eval_cmd->add_option("--train-fraction", eval.train_fraction, "Share of instances used for training")
      ->capture_default_str();
  eval_cmd->add_option("--seed", eval.seed, "Shuffle seed")->capture_default_str();
  eval_cmd->add_option("--fields", eval.fields, "Fields to evaluate (label or label[uri])")->delimiter(',');
  eval_cmd->add_option("--workers", eval.workers, "Worker threads; 0 uses every core");
  eval_cmd->add_option("--out", eval.out, "Directory for report.json, report.csv and executions.jsonl");
  add_mining_flags(eval_cmd, mining);

  std::string bind = "127.0.0.1:8080";
  auto* serve_cmd = app.add_subcommand("serve", "Serve a store over HTTP");
  serve_cmd->add_option("--store", store, "Store directory")->required();
  serve_cmd->add_option("--mappings", mappings, "Term mapping file (JSON lines)");
  serve_cmd->add_option("--bind", bind, "host:port; port 0 picks a free one")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*train_cmd) return run_train(instances, store, mappings, mining);
    if (*rec_cmd) {
      valrec::RecommendOptions options;
      if (score_cutoff >= 0.0) options.score_cutoff = score_cutoff;
      if (max_results > 0) options.max_results = max_results;
      return run_recommend(store, mappings, target, context, options, as_json);
    }
    if (*eval_cmd) return run_evaluate(eval, mining);
    if (*serve_cmd) return run_serve(store, mappings, bind);
  } catch (const valrec::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const valrec::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
