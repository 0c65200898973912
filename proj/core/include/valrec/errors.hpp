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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace valrec {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidTerm : public Error {
 public:
  explicit InvalidTerm(const std::string& uri)
      : Error("invalid ontology term URI: '" + uri + "'") {}
};

class InvalidSlot : public Error {
 public:
  using Error::Error;
};

class DuplicateField : public Error {
 public:
  explicit DuplicateField(std::string field_label)
      : Error("duplicate field: " + field_label), field_label_(std::move(field_label)) {}
  const std::string& field_label() const noexcept { return field_label_; }

 private:
  std::string field_label_;
};

class MalformedRecord : public Error {
 public:
  using Error::Error;
};

class UnknownTemplate : public Error {
 public:
  explicit UnknownTemplate(const std::string& template_id)
      : Error("no instances for template '" + template_id + "'") {}
};

class InvalidCount : public Error {
 public:
  using Error::Error;
};

class TargetInContext : public Error {
 public:
  explicit TargetInContext(const std::string& field_label)
      : Error("target field '" + field_label + "' is already present in the context") {}
};

class TargetMissing : public Error {
 public:
  explicit TargetMissing(const std::string& field_label)
      : Error("instance has no value for target field '" + field_label + "'") {}
};

class EmptyRepository : public Error {
 public:
  EmptyRepository() : Error("instance repository is empty") {}
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : Error("line " + std::to_string(line) + ": " + reason), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace valrec
