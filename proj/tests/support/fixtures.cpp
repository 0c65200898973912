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

#include "support/fixtures.hpp"

namespace valrec::testing {

FieldValuePair text_pair(const std::string& field, const std::string& value) {
  return {{field, std::nullopt}, {value, std::nullopt}};
}

FieldValuePair typed_pair(const std::string& field, const std::string& field_uri, const std::string& value,
                          const std::string& value_uri) {
  return {{field, TermRef::parse(field_uri)}, {value, TermRef::parse(value_uri)}};
}

FieldSlot text_field(const std::string& label) {
  return {label, std::nullopt};
}

FieldSlot typed_field(const std::string& label, const std::string& uri) {
  return {label, TermRef::parse(uri)};
}

InstanceRepository meningitis_repository() {
  auto inst = [](std::vector<FieldValuePair> pairs) { return TemplateInstance{kExperiment, std::move(pairs)}; };
  return InstanceRepository({
      inst({text_pair("sex", "male"), text_pair("tissue", "brain"), text_pair("disease", "meningitis")}),
      inst({text_pair("sex", "female"), text_pair("tissue", "brain"), text_pair("disease", "meningitis")}),
      inst({text_pair("tissue", "liver"), text_pair("disease", "cirrhosis")}),
      inst({text_pair("sex", "male"), text_pair("tissue", "liver"), text_pair("disease", "liver cancer")}),
      inst({text_pair("tissue", "liver"), text_pair("disease", "liver cancer")}),
      inst({text_pair("sex", "male"), text_pair("tissue", "brain"), text_pair("disease", "meningitis")}),
  });
}

std::map<std::string, AssociationRule> worked_rules() {
  auto rule = [](std::vector<FieldValuePair> antecedent, FieldValuePair consequent, std::uint32_t support,
                 double confidence) {
    return AssociationRule{std::move(antecedent), std::move(consequent), support, confidence, kExperiment};
  };
  const auto male = text_pair("sex", "male");
  const auto female = text_pair("sex", "female");
  const auto brain = text_pair("tissue", "brain");
  const auto liver = text_pair("tissue", "liver");
  const auto meningitis = text_pair("disease", "meningitis");
  const auto liver_cancer = text_pair("disease", "liver cancer");
  const auto cirrhosis = text_pair("disease", "cirrhosis");
  const double two_thirds = 2.0 / 3.0;
  return {
      {"r1", rule({meningitis}, brain, 3, 1.0)},
      {"r2", rule({brain}, meningitis, 3, 1.0)},
      {"r3", rule({liver_cancer}, liver, 2, 1.0)},
      {"r4", rule({male, meningitis}, brain, 2, 1.0)},
      {"r5", rule({male, brain}, meningitis, 2, 1.0)},
      {"r6", rule({female}, brain, 1, 1.0)},
      {"r7", rule({female}, meningitis, 1, 1.0)},
      {"r8", rule({cirrhosis}, liver, 1, 1.0)},
      {"r9", rule({male, liver_cancer}, liver, 1, 1.0)},
      {"r10", rule({male, liver}, liver_cancer, 1, 1.0)},
      {"r11", rule({female, meningitis}, brain, 1, 1.0)},
      {"r12", rule({female, brain}, meningitis, 1, 1.0)},
      {"r13", rule({brain}, male, 2, two_thirds)},
      {"r14", rule({male}, brain, 2, two_thirds)},
      {"r15", rule({meningitis}, male, 2, two_thirds)},
      {"r16", rule({male}, meningitis, 2, two_thirds)},
      {"r17", rule({liver}, liver_cancer, 2, two_thirds)},
  };
}

std::vector<AssociationRule> worked_rule_list() {
  std::vector<AssociationRule> out;
  const auto rules = worked_rules();
  for (int i = 1; i <= 17; ++i) out.push_back(rules.at("r" + std::to_string(i)));
  return out;
}

namespace xtemplate {

std::vector<std::vector<std::string>> mapping_records() {
  return {
      {kCellTypeEfo, kCellTypeCl},
      {kTissueNcit, kTissueUberon},
      {kAlphaCellCl, kAlphaCellBto},
      {kPancreas, kPancreasBto},
  };
}

MappingRepository mappings() {
  return MappingRepository::from_records(mapping_records());
}

InstanceRepository experiment_repository() {
  auto inst = [](const char* cell, const char* cell_uri, const char* tissue, const char* tissue_uri,
                 const char* sex, const char* sex_uri) {
    return TemplateInstance{kExperiment,
                            {typed_pair("source cell", kCellTypeCl, cell, cell_uri),
                             typed_pair("source tissue", kTissueUberon, tissue, tissue_uri),
                             typed_pair("sex", kSexField, sex, sex_uri)}};
  };
  std::vector<TemplateInstance> v;
  for (int i = 0; i < 8; ++i) v.push_back(inst("pancreatic A cell", kAlphaCellCl, "pancreas", kPancreas, "male", kMale));
  for (int i = 0; i < 2; ++i) {
    v.push_back(inst("pancreatic A cell", kAlphaCellCl, "pancreas mesenchyme", kPancreasMesenchyme, "female", kFemale));
  }
  for (int i = 0; i < 6; ++i) {
    v.push_back(inst("hepatocyte", kHepatocyte, "liver", kLiver, i % 3 == 0 ? "female" : "male",
                     i % 3 == 0 ? kFemale : kMale));
  }
  return InstanceRepository(std::move(v));
}

Context assay_context() {
  return Context{{typed_pair("cell type", kCellTypeEfo, "pancreatic alpha cell", kAlphaCellBto)}};
}

FieldSlot assay_tissue() {
  return typed_field("tissue", kTissueNcit);
}

}  // namespace xtemplate

}  // namespace valrec::testing
