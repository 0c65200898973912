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

#include "valrec/mapping.hpp"

#include <algorithm>
#include <numeric>

namespace valrec {

namespace {

class DisjointSets {
 public:
  std::size_t add() {
    parent_.push_back(parent_.size());
    rank_.push_back(0);
    return parent_.size() - 1;
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned char> rank_;
};

}  // namespace

MappingRepository MappingRepository::from_records(
    const std::vector<std::vector<std::string>>& records) {
  std::vector<TermRef> terms;
  std::unordered_map<std::string, std::size_t> node_of;
  DisjointSets sets;

  auto node_for = [&](const TermRef& t) {
    auto [it, inserted] = node_of.try_emplace(t.uri(), 0);
    if (inserted) {
      it->second = sets.add();
      terms.push_back(t);
    }
    return it->second;
  };

  for (std::size_t r = 0; r < records.size(); ++r) {
    const auto& record = records[r];
    if (record.size() < 2) {
      throw MalformedRecord("mapping record " + std::to_string(r + 1) + " lists fewer than 2 terms");
    }
    std::size_t first = 0;
    for (std::size_t i = 0; i < record.size(); ++i) {
      TermRef term = [&] {
        try {
          return TermRef::parse(record[i]);
        } catch (const InvalidTerm& e) {
          throw MalformedRecord("mapping record " + std::to_string(r + 1) + ": " + e.what());
        }
      }();
      const std::size_t node = node_for(term);
      if (i == 0) {
        first = node;
      } else {
        sets.unite(first, node);
      }
    }
  }

  std::unordered_map<std::size_t, std::vector<TermRef>> grouped;
  for (std::size_t i = 0; i < terms.size(); ++i) grouped[sets.find(i)].push_back(terms[i]);

  MappingRepository repo;
  repo.classes_.reserve(grouped.size());
  for (auto& [root, members] : grouped) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    repo.classes_.push_back(std::move(members));
  }
  // Order classes by their representative so class ids are ingestion-order independent.
  std::sort(repo.classes_.begin(), repo.classes_.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  for (std::size_t c = 0; c < repo.classes_.size(); ++c) {
    for (const auto& t : repo.classes_[c]) repo.class_of_.emplace(t.uri(), c);
  }
  return repo;
}

std::vector<TermRef> MappingRepository::equivalent_terms(const TermRef& term) const {
  auto it = class_of_.find(term.uri());
  if (it == class_of_.end()) return {term};
  return classes_[it->second];
}

const std::string& MappingRepository::canonical(const TermRef& term) const {
  auto it = class_of_.find(term.uri());
  if (it == class_of_.end()) return term.uri();
  return classes_[it->second].front().uri();
}

bool MappingRepository::contains(const TermRef& term) const {
  return class_of_.contains(term.uri());
}

std::vector<TermRef> equivalent_terms(const TermRef& term, const MappingRepository& mappings) {
  return mappings.equivalent_terms(term);
}

std::string MatchKey::str() const {
  return (kind == Kind::kTermClass ? "term:" : "label:") + key;
}

namespace {

MatchKey slot_key(const std::string& label, const std::optional<TermRef>& type,
                  const MappingRepository& mappings) {
  if (type) return {MatchKey::Kind::kTermClass, mappings.canonical(*type)};
  return {MatchKey::Kind::kLabel, normalize_label(label)};
}

}  // namespace

MatchKey field_key(const FieldSlot& field, const MappingRepository& mappings) {
  return slot_key(field.label, field.type, mappings);
}

MatchKey value_key(const ValueAtom& value, const MappingRepository& mappings) {
  return slot_key(value.label, value.type, mappings);
}

PairKey pair_key(const FieldValuePair& pair, const MappingRepository& mappings) {
  return {field_key(pair.field, mappings), value_key(pair.value, mappings)};
}

}  // namespace valrec
