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

#include "valrec/io.hpp"

#include <istream>
#include <ostream>

namespace valrec {

namespace {

using ojson = nlohmann::ordered_json;

std::optional<TermRef> optional_term(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return parse_optional_term(it->get<std::string>());
}

std::string string_or_empty(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return {};
  return it->get<std::string>();
}

bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

}  // namespace

nlohmann::ordered_json slot_to_json(const FieldSlot& field) {
  ojson j;
  j["fieldLabel"] = field.label;
  j["fieldType"] = field.type ? ojson(field.type->uri()) : ojson(nullptr);
  return j;
}

FieldSlot slot_from_json(const nlohmann::json& j) {
  FieldSlot f{j.at("fieldLabel").get<std::string>(), optional_term(j, "fieldType")};
  if (normalize_label(f.label).empty()) throw InvalidSlot("field label is empty");
  return f;
}

nlohmann::ordered_json pair_to_json(const FieldValuePair& pair) {
  ojson j;
  j["fieldLabel"] = pair.field.label;
  j["fieldType"] = pair.field.type ? ojson(pair.field.type->uri()) : ojson(nullptr);
  j["valueLabel"] = pair.value.label;
  j["valueType"] = pair.value.type ? ojson(pair.value.type->uri()) : ojson(nullptr);
  return j;
}

FieldValuePair pair_from_json(const nlohmann::json& j) {
  FieldValuePair p;
  p.field.label = j.at("fieldLabel").get<std::string>();
  p.field.type = optional_term(j, "fieldType");
  p.value.label = string_or_empty(j, "valueLabel");
  p.value.type = optional_term(j, "valueType");
  return p;
}

nlohmann::ordered_json instance_to_json(const TemplateInstance& instance) {
  ojson j;
  j["templateId"] = instance.template_id;
  j["fields"] = ojson::array();
  for (const auto& pair : instance.pairs) j["fields"].push_back(pair_to_json(pair));
  return j;
}

TemplateInstance instance_from_json(const nlohmann::json& j) {
  TemplateInstance instance;
  instance.template_id = j.at("templateId").get<std::string>();
  for (const auto& f : j.at("fields")) instance.pairs.push_back(pair_from_json(f));
  return instance;
}

IngestReport read_instances(std::istream& in, const MappingRepository& mappings) {
  IngestReport report;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    ++report.records;
    TemplateInstance raw;
    try {
      raw = instance_from_json(nlohmann::json::parse(line));
      if (normalize_label(raw.template_id).empty()) throw MalformedRecord("templateId is empty");
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(line_no, e.what());
    } catch (const InvalidTerm& e) {
      throw ParseError(line_no, e.what());
    } catch (const MalformedRecord& e) {
      throw ParseError(line_no, e.what());
    }

    try {
      TemplateInstance clean = validate_instance(raw, mappings);
      const std::size_t dropped = raw.pairs.size() - clean.pairs.size();
      if (dropped > 0) {
        report.dropped_pairs += dropped;
        report.warnings.push_back("line " + std::to_string(line_no) + ": dropped " + std::to_string(dropped) +
                                  " pair(s) with empty values");
      }
      report.repo.add(std::move(clean));
    } catch (const DuplicateField& e) {
      ++report.dropped_records;
      report.warnings.push_back("line " + std::to_string(line_no) + ": record dropped: " + e.what());
    } catch (const InvalidSlot& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return report;
}

IngestReport ingest_instances(const std::filesystem::path& path, const MappingRepository& mappings) {
  auto in = open_input(path);
  return read_instances(in, mappings);
}

void write_instances(std::ostream& out, const InstanceRepository& repo) {
  for (const auto& instance : repo) out << instance_to_json(instance).dump() << '\n';
}

MappingRepository read_mappings(std::istream& in) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::size_t> lines;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      records.push_back(j.at("terms").get<std::vector<std::string>>());
      lines.push_back(line_no);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(line_no, e.what());
    }
  }
  // Validate record by record so the error names the offending line.
  for (std::size_t i = 0; i < records.size(); ++i) {
    try {
      MappingRepository::from_records({records[i]});
    } catch (const MalformedRecord& e) {
      throw ParseError(lines[i], e.what());
    }
  }
  return MappingRepository::from_records(records);
}

MappingRepository load_mappings(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_mappings(in);
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

}  // namespace valrec
