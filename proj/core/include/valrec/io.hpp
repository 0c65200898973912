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

// JSON-lines file formats.
//
// Instances:  {"templateId": "...", "fields": [{"fieldLabel": "...",
//              "fieldType": "<uri>"|null, "valueLabel": "...",
//              "valueType": "<uri>"|null}, ...]}
// Mappings:   {"terms": ["<uri>", "<uri>", ...]}

#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "valrec/mapping.hpp"
#include "valrec/model.hpp"

namespace valrec {

struct IngestReport {
  InstanceRepository repo;
  std::size_t records = 0;
  std::size_t dropped_pairs = 0;
  std::size_t dropped_records = 0;
  std::vector<std::string> warnings;
};

// Parses and validates every line. Blank values are dropped; records with a
// repeated field identity are dropped. Both produce a warning. Malformed
// lines throw ParseError.
IngestReport read_instances(std::istream& in, const MappingRepository& mappings = {});
// Throws IoError when the file cannot be opened.
IngestReport ingest_instances(const std::filesystem::path& path, const MappingRepository& mappings = {});

void write_instances(std::ostream& out, const InstanceRepository& repo);

// Throws ParseError (with the line of the offending record).
MappingRepository read_mappings(std::istream& in);
MappingRepository load_mappings(const std::filesystem::path& path);

nlohmann::ordered_json instance_to_json(const TemplateInstance& instance);
TemplateInstance instance_from_json(const nlohmann::json& j);

// {"fieldLabel", "fieldType"?} <-> FieldSlot.
nlohmann::ordered_json slot_to_json(const FieldSlot& field);
FieldSlot slot_from_json(const nlohmann::json& j);
// {"fieldLabel", "fieldType"?, "valueLabel", "valueType"?} <-> FieldValuePair.
nlohmann::ordered_json pair_to_json(const FieldValuePair& pair);
FieldValuePair pair_from_json(const nlohmann::json& j);

std::ifstream open_input(const std::filesystem::path& path);
std::ofstream open_output(const std::filesystem::path& path);

}  // namespace valrec
