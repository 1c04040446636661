// Copyright 2026 The ptesolve Authors.
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

#ifndef PTESOLVE_SRC_JSON_READER_H_
#define PTESOLVE_SRC_JSON_READER_H_

// JSON parsing that remembers where every value came from, plus the small
// typed-access layer the document schemas are written against.

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <unordered_map>

#include "json.hpp"
#include "ptesolve/format.h"

namespace ptesolve::json {

using Json = nlohmann::ordered_json;

std::string EscapePointerToken(std::string_view token);

// A parsed DOM and the byte offset of each value, keyed by JSON pointer.
// Object members map to the offset of their key.
class Document {
 public:
  // Throws FormatError (syntax) on malformed JSON or duplicate keys.
  static Document Parse(std::string_view text);

  const Json& root() const { return root_; }

  // Position of `pointer`, or of its nearest recorded ancestor.
  Diagnostic At(std::string_view pointer, Diagnostic::Kind kind,
                std::string message) const;
  [[noreturn]] void Fail(std::string_view pointer, std::string message) const;

  // Typed accessors; all throw semantic FormatError on mismatch.
  const Json& Object(const Json& value, const std::string& pointer,
                     std::initializer_list<std::string_view> required,
                     std::initializer_list<std::string_view> optional) const;
  const Json& Array(const Json& value, const std::string& pointer) const;
  const std::string& String(const Json& value,
                            const std::string& pointer) const;
  std::int64_t Integer(const Json& value, const std::string& pointer) const;
  std::uint64_t Unsigned(const Json& value, const std::string& pointer) const;
  bool Boolean(const Json& value, const std::string& pointer) const;

  // Checks the mandatory "version" and "kind" members.
  void ExpectHeader(const Json& object, std::string_view kind) const;

 private:
  Document(std::string text, Json root,
           std::unordered_map<std::string, std::size_t> offsets)
      : text_(std::move(text)),
        root_(std::move(root)),
        offsets_(std::move(offsets)) {}

  std::string text_;
  Json root_;
  std::unordered_map<std::string, std::size_t> offsets_;
};

// Canonical rendering: 2-space indent, trailing newline.
std::string Dump(const Json& value);

}  // namespace ptesolve::json

#endif  // PTESOLVE_SRC_JSON_READER_H_
