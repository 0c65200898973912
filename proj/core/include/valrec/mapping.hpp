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

// Equivalence classes of ontology terms and the match keys derived from them.
//
// Two fields (or two values) are the same thing when their match keys are
// equal. An annotated slot resolves to the canonical member of its term's
// equivalence class; an unannotated slot resolves to its normalized label.
// The two kinds never compare equal.

#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "valrec/model.hpp"

namespace valrec {

class MappingRepository {
 public:
  MappingRepository() = default;

  // Union-find closure over the records. Each record must list at least two
  // valid URIs; otherwise throws MalformedRecord.
  static MappingRepository from_records(const std::vector<std::vector<std::string>>& records);

  // Members of the class containing `term`, sorted; {term} when unmapped.
  std::vector<TermRef> equivalent_terms(const TermRef& term) const;

  // Lexicographically smallest member of the class; `term` itself when unmapped.
  const std::string& canonical(const TermRef& term) const;

  bool contains(const TermRef& term) const;
  std::size_t class_count() const noexcept { return classes_.size(); }
  const std::vector<std::vector<TermRef>>& classes() const noexcept { return classes_; }

 private:
  std::vector<std::vector<TermRef>> classes_;
  std::unordered_map<std::string, std::size_t> class_of_;
};

std::vector<TermRef> equivalent_terms(const TermRef& term, const MappingRepository& mappings);

struct MatchKey {
  enum class Kind : unsigned char { kTermClass, kLabel };

  Kind kind = Kind::kLabel;
  std::string key;

  friend bool operator==(const MatchKey&, const MatchKey&) = default;
  friend auto operator<=>(const MatchKey&, const MatchKey&) = default;

  // "term:<uri>" or "label:<normalized label>".
  std::string str() const;
};

MatchKey field_key(const FieldSlot& field, const MappingRepository& mappings);
MatchKey value_key(const ValueAtom& value, const MappingRepository& mappings);

// Identity of a field-value pair for set operations.
struct PairKey {
  MatchKey field;
  MatchKey value;

  friend bool operator==(const PairKey&, const PairKey&) = default;
  friend auto operator<=>(const PairKey&, const PairKey&) = default;
};

PairKey pair_key(const FieldValuePair& pair, const MappingRepository& mappings);

}  // namespace valrec

template <>
struct std::hash<valrec::MatchKey> {
  std::size_t operator()(const valrec::MatchKey& k) const noexcept {
    return std::hash<std::string>{}(k.key) ^ (static_cast<std::size_t>(k.kind) * 0x9e3779b97f4a7c15ULL);
  }
};

template <>
struct std::hash<valrec::PairKey> {
  std::size_t operator()(const valrec::PairKey& k) const noexcept {
    const std::size_t h = std::hash<valrec::MatchKey>{}(k.field);
    return h ^ (std::hash<valrec::MatchKey>{}(k.value) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  }
};
