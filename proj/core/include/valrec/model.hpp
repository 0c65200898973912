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

// Domain types shared by every stage of the pipeline: field slots, values,
// template instances, contexts and the instance repository.

#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "valrec/errors.hpp"

namespace valrec {

class MappingRepository;

// Trim, collapse internal whitespace runs to a single space, ASCII case-fold.
std::string normalize_label(std::string_view label);

// An ontology term identifier. Always a trimmed, non-empty string containing
// a scheme separator; compared verbatim.
class TermRef {
 public:
  // Throws InvalidTerm.
  static TermRef parse(std::string_view uri);

  const std::string& uri() const noexcept { return uri_; }

  friend bool operator==(const TermRef&, const TermRef&) = default;
  friend auto operator<=>(const TermRef&, const TermRef&) = default;

 private:
  explicit TermRef(std::string uri) : uri_(std::move(uri)) {}
  std::string uri_;
};

// Parses an optional URI: empty or all-whitespace input yields nullopt.
std::optional<TermRef> parse_optional_term(std::string_view uri);

struct FieldSlot {
  std::string label;
  std::optional<TermRef> type;

  friend bool operator==(const FieldSlot&, const FieldSlot&) = default;
  friend auto operator<=>(const FieldSlot&, const FieldSlot&) = default;
};

struct ValueAtom {
  std::string label;
  std::optional<TermRef> type;

  friend bool operator==(const ValueAtom&, const ValueAtom&) = default;
  friend auto operator<=>(const ValueAtom&, const ValueAtom&) = default;
};

struct FieldValuePair {
  FieldSlot field;
  ValueAtom value;

  friend bool operator==(const FieldValuePair&, const FieldValuePair&) = default;
  friend auto operator<=>(const FieldValuePair&, const FieldValuePair&) = default;
};

// One filled-in record of a template. Pairs keep their entry order.
struct TemplateInstance {
  std::string template_id;
  std::vector<FieldValuePair> pairs;

  friend bool operator==(const TemplateInstance&, const TemplateInstance&) = default;
};

// Values the user has already entered. May be empty.
struct Context {
  std::vector<FieldValuePair> pairs;

  bool empty() const noexcept { return pairs.empty(); }
  std::size_t size() const noexcept { return pairs.size(); }
};

// Drops pairs whose value label is blank and rejects repeated field
// identities (throws DuplicateField). Field labels must be non-blank
// (throws InvalidSlot). Identity is resolved through `mappings` when given.
TemplateInstance validate_instance(const TemplateInstance& raw);
TemplateInstance validate_instance(const TemplateInstance& raw, const MappingRepository& mappings);

// Throws DuplicateField when two context pairs share a field identity.
void validate_context(const Context& context, const MappingRepository& mappings);

class InstanceRepository {
 public:
  InstanceRepository() = default;
  explicit InstanceRepository(std::vector<TemplateInstance> instances);

  // Throws MalformedRecord when the instance has no template id.
  void add(TemplateInstance instance);

  const std::vector<TemplateInstance>& instances() const noexcept { return instances_; }
  std::size_t size() const noexcept { return instances_.size(); }
  bool empty() const noexcept { return instances_.empty(); }

  // Sorted, unique.
  std::vector<std::string> template_ids() const;
  std::size_t count(std::string_view template_id) const;

  auto begin() const { return instances_.begin(); }
  auto end() const { return instances_.end(); }

 private:
  std::vector<TemplateInstance> instances_;
};

}  // namespace valrec
