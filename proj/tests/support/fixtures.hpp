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

// Worked-example data shared by unit and acceptance tests.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "valrec/mapping.hpp"
#include "valrec/mining.hpp"
#include "valrec/model.hpp"

namespace valrec::testing {

inline constexpr const char* kExperiment = "Experiment";

FieldValuePair text_pair(const std::string& field, const std::string& value);
FieldValuePair typed_pair(const std::string& field, const std::string& field_uri, const std::string& value,
                          const std::string& value_uri);
FieldSlot text_field(const std::string& label);
FieldSlot typed_field(const std::string& label, const std::string& uri);

// Six Experiment instances over sex / tissue / disease.
InstanceRepository meningitis_repository();

// Hand-derived rules that mining meningitis_repository at support 1 and
// confidence 0.6 must produce, keyed "r1".."r17". Antecedents are listed in
// reading order, not key order.
std::map<std::string, AssociationRule> worked_rules();
std::vector<AssociationRule> worked_rule_list();

// Cross-template scenario: an Experiment template annotated with one set of
// terms, an Assay template with another, and mappings aligning them.
namespace xtemplate {
inline constexpr const char* kCellTypeEfo = "http://www.ebi.ac.uk/efo/EFO_0000324";
inline constexpr const char* kCellTypeCl = "http://purl.obolibrary.org/obo/CL_0000000";
inline constexpr const char* kTissueNcit = "http://ncicb.nci.nih.gov/xml/owl/EVS/Thesaurus.owl#C12801";
inline constexpr const char* kTissueUberon = "http://purl.obolibrary.org/obo/UBERON_0000479";
inline constexpr const char* kAlphaCellCl = "http://purl.obolibrary.org/obo/CL_0000171";
inline constexpr const char* kAlphaCellBto = "http://purl.obolibrary.org/obo/BTO_0000990";
inline constexpr const char* kPancreas = "http://purl.obolibrary.org/obo/UBERON_0001264";
inline constexpr const char* kPancreasBto = "http://purl.obolibrary.org/obo/BTO_0000998";
inline constexpr const char* kPancreasMesenchyme = "http://purl.obolibrary.org/obo/UBERON_0003849";
inline constexpr const char* kHepatocyte = "http://purl.obolibrary.org/obo/CL_0000182";
inline constexpr const char* kLiver = "http://purl.obolibrary.org/obo/UBERON_0002107";
inline constexpr const char* kSexField = "http://purl.obolibrary.org/obo/PATO_0000047";
inline constexpr const char* kMale = "http://purl.obolibrary.org/obo/PATO_0000384";
inline constexpr const char* kFemale = "http://purl.obolibrary.org/obo/PATO_0000383";

std::vector<std::vector<std::string>> mapping_records();
MappingRepository mappings();
InstanceRepository experiment_repository();
// Assay context: cell type (EFO) = pancreatic alpha cell (BTO).
Context assay_context();
// Assay target: tissue (NCIT).
FieldSlot assay_tissue();
}  // namespace xtemplate

}  // namespace valrec::testing
