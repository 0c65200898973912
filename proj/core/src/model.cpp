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

#include "valrec/model.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "valrec/mapping.hpp"

namespace valrec {

namespace {

bool is_space(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

const MappingRepository& empty_mappings() {
  static const MappingRepository kEmpty;
  return kEmpty;
}

}  // namespace

std::string normalize_label(std::string_view label) {
  std::string out;
  out.reserve(label.size());
  bool pending_space = false;
  for (char c : trim(label)) {
    if (is_space(c)) {
      pending_space = true;
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

TermRef TermRef::parse(std::string_view uri) {
  const std::string_view t = trim(uri);
  const auto colon = t.find(':');
  if (t.empty() || colon == std::string_view::npos || colon == 0 ||
      std::any_of(t.begin(), t.end(), is_space)) {
    throw InvalidTerm(std::string(uri));
  }
  return TermRef(std::string(t));
}

std::optional<TermRef> parse_optional_term(std::string_view uri) {
  if (trim(uri).empty()) return std::nullopt;
  return TermRef::parse(uri);
}

TemplateInstance validate_instance(const TemplateInstance& raw) {
  return validate_instance(raw, empty_mappings());
}

TemplateInstance validate_instance(const TemplateInstance& raw, const MappingRepository& mappings) {
  TemplateInstance out;
  out.template_id = raw.template_id;
  out.pairs.reserve(raw.pairs.size());
  std::unordered_set<MatchKey> seen;
  for (const auto& pair : raw.pairs) {
    if (trim(pair.field.label).empty()) {
      throw InvalidSlot("field label is empty");
    }
    if (trim(pair.value.label).empty()) continue;
    if (!seen.insert(field_key(pair.field, mappings)).second) {
      throw DuplicateField(pair.field.label);
    }
    out.pairs.push_back(pair);
  }
  return out;
}

void validate_context(const Context& context, const MappingRepository& mappings) {
  std::unordered_set<MatchKey> seen;
  for (const auto& pair : context.pairs) {
    if (!seen.insert(field_key(pair.field, mappings)).second) {
      throw DuplicateField(pair.field.label);
    }
  }
}

InstanceRepository::InstanceRepository(std::vector<TemplateInstance> instances) {
  instances_.reserve(instances.size());
  for (auto& instance : instances) add(std::move(instance));
}

void InstanceRepository::add(TemplateInstance instance) {
  if (trim(instance.template_id).empty()) {
    throw MalformedRecord("instance has no templateId");
  }
  instances_.push_back(std::move(instance));
}

std::vector<std::string> InstanceRepository::template_ids() const {
  std::vector<std::string> ids;
  for (const auto& instance : instances_) ids.push_back(instance.template_id);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

std::size_t InstanceRepository::count(std::string_view template_id) const {
  return static_cast<std::size_t>(std::count_if(
      instances_.begin(), instances_.end(),
      [&](const TemplateInstance& i) { return i.template_id == template_id; }));
}

}  // namespace valrec
