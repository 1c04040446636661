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

#include "json_reader.h"

#include <algorithm>
#include <iterator>
#include <limits>
#include <set>
#include <vector>

namespace ptesolve::json {
namespace {

// Forward iterator over the input that records the furthest byte the lexer
// has consumed, which is how SAX events get positions.
class TrackingIterator {
 public:
  using iterator_category = std::forward_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  TrackingIterator() = default;
  TrackingIterator(const char* p, const char** high) : p_(p), high_(high) {}

  reference operator*() const { return *p_; }
  TrackingIterator& operator++() {
    ++p_;
    if (high_ && p_ > *high_) *high_ = p_;
    return *this;
  }
  TrackingIterator operator++(int) {
    TrackingIterator old = *this;
    ++*this;
    return old;
  }
  bool operator==(const TrackingIterator& o) const { return p_ == o.p_; }
  bool operator!=(const TrackingIterator& o) const { return p_ != o.p_; }

 private:
  const char* p_ = nullptr;
  const char** high_ = nullptr;
};

struct Position {
  int line = 1;
  int column = 1;
};

Position Locate(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  Position pos;
  std::size_t line_start = 0;
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++pos.line;
      line_start = i + 1;
    }
  }
  pos.column = static_cast<int>(offset - line_start) + 1;
  return pos;
}

class DomBuilder : public nlohmann::json_sax<Json> {
 public:
  DomBuilder(std::string_view text, const char** high)
      : text_(text), high_(high) {}

  bool null() override { return Put(Json(nullptr)); }
  bool boolean(bool v) override { return Put(Json(v)); }
  bool number_integer(number_integer_t v) override { return Put(Json(v)); }
  bool number_unsigned(number_unsigned_t v) override { return Put(Json(v)); }
  bool number_float(number_float_t v, const string_t&) override {
    return Put(Json(v));
  }
  bool string(string_t& v) override { return Put(Json(v)); }
  bool binary(binary_t&) override { return Put(Json(nullptr)); }

  bool start_object(std::size_t) override {
    Json* slot = Insert(Json::object());
    frames_.push_back({slot, current_pointer_, {}, 0});
    return true;
  }
  bool end_object() override {
    frames_.pop_back();
    Consumed();
    return true;
  }
  bool start_array(std::size_t) override {
    Json* slot = Insert(Json::array());
    frames_.push_back({slot, current_pointer_, {}, 0});
    return true;
  }
  bool end_array() override {
    frames_.pop_back();
    Consumed();
    return true;
  }

  bool key(string_t& k) override {
    Frame& frame = frames_.back();
    std::size_t start = TokenStart();
    std::string pointer = frame.pointer + "/" + EscapePointerToken(k);
    if (!frame.keys.insert(k).second) {
      error_ = Diagnostic{Diagnostic::Kind::kSyntax, 0, 0, pointer,
                          "duplicate key '" + k + "'"};
      error_offset_ = start;
      return false;
    }
    offsets_.emplace(pointer, start);
    pending_key_ = k;
    Consumed();
    return true;
  }

  bool parse_error(std::size_t position, const std::string&,
                   const nlohmann::detail::exception& ex) override {
    std::string msg = ex.what();
    // Drop nlohmann's "[json.exception...] parse error at line L, column C: "
    // prefix; the position is reported separately.
    std::size_t col = msg.find("column ");
    if (col != std::string::npos) {
      std::size_t colon = msg.find(": ", col);
      if (colon != std::string::npos) msg = msg.substr(colon + 2);
    }
    error_ = Diagnostic{Diagnostic::Kind::kSyntax, 0, 0, "", msg};
    error_offset_ = position > 0 ? position - 1 : 0;
    return false;
  }

  bool failed() const { return error_.has_value(); }
  Diagnostic error() const {
    Diagnostic d = *error_;
    Position pos = Locate(text_, error_offset_);
    d.line = pos.line;
    d.column = pos.column;
    return d;
  }

  Json TakeRoot() { return std::move(root_); }
  std::unordered_map<std::string, std::size_t> TakeOffsets() {
    return std::move(offsets_);
  }

 private:
  struct Frame {
    Json* container;
    std::string pointer;
    std::set<std::string> keys;
    std::size_t next_index;
  };

  std::size_t Consumed() {
    last_end_ = static_cast<std::size_t>(*high_ - text_.data());
    return last_end_;
  }

  // First byte at or after the previous event that can start a token.
  std::size_t TokenStart() const {
    std::size_t i = last_end_;
    while (i < text_.size()) {
      char c = text_[i];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ',' ||
          c == ':') {
        ++i;
      } else {
        break;
      }
    }
    return i;
  }

  Json* Insert(Json value) {
    if (frames_.empty()) {
      current_pointer_ = "";
      offsets_.emplace("", TokenStart());
      root_ = std::move(value);
      Consumed();
      return &root_;
    }
    Frame& frame = frames_.back();
    Json* slot;
    if (frame.container->is_array()) {
      current_pointer_ = frame.pointer + "/" + std::to_string(frame.next_index);
      ++frame.next_index;
      offsets_.emplace(current_pointer_, TokenStart());
      frame.container->push_back(std::move(value));
      slot = &frame.container->back();
    } else {
      current_pointer_ = frame.pointer + "/" + EscapePointerToken(pending_key_);
      slot = &((*frame.container)[pending_key_] = std::move(value));
    }
    Consumed();
    return slot;
  }

  bool Put(Json value) {
    Insert(std::move(value));
    return true;
  }

  std::string_view text_;
  const char** high_;
  Json root_;
  std::vector<Frame> frames_;
  std::string pending_key_;
  std::string current_pointer_;
  std::size_t last_end_ = 0;
  std::unordered_map<std::string, std::size_t> offsets_;
  std::optional<Diagnostic> error_;
  std::size_t error_offset_ = 0;
};

std::string_view TypeName(const Json& v) {
  if (v.is_object()) return "object";
  if (v.is_array()) return "array";
  if (v.is_string()) return "string";
  if (v.is_boolean()) return "boolean";
  if (v.is_number_float()) return "non-integer number";
  if (v.is_number()) return "integer";
  return "null";
}

}  // namespace

std::string EscapePointerToken(std::string_view token) {
  std::string out;
  for (char c : token) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

Document Document::Parse(std::string_view text) {
  const char* high = text.data();
  DomBuilder builder(text, &high);
  TrackingIterator first(text.data(), &high);
  TrackingIterator last(text.data() + text.size(), nullptr);
  bool ok = false;
  try {
    ok = Json::sax_parse(first, last, &builder);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError({Diagnostic{Diagnostic::Kind::kSyntax, 1, 1, "",
                                  e.what()}});
  }
  if (!ok || builder.failed()) {
    if (builder.failed()) throw FormatError({builder.error()});
    throw FormatError(
        {Diagnostic{Diagnostic::Kind::kSyntax, 1, 1, "", "invalid JSON"}});
  }
  return Document(std::string(text), builder.TakeRoot(),
                  builder.TakeOffsets());
}

Diagnostic Document::At(std::string_view pointer, Diagnostic::Kind kind,
                        std::string message) const {
  std::string probe(pointer);
  std::size_t offset = 0;
  while (true) {
    auto it = offsets_.find(probe);
    if (it != offsets_.end()) {
      offset = it->second;
      break;
    }
    if (probe.empty()) break;
    std::size_t slash = probe.rfind('/');
    probe = slash == std::string::npos ? "" : probe.substr(0, slash);
  }
  Position pos = Locate(text_, offset);
  return Diagnostic{kind, pos.line, pos.column, std::string(pointer),
                    std::move(message)};
}

void Document::Fail(std::string_view pointer, std::string message) const {
  throw FormatError(
      {At(pointer, Diagnostic::Kind::kSemantic, std::move(message))});
}

const Json& Document::Object(
    const Json& value, const std::string& pointer,
    std::initializer_list<std::string_view> required,
    std::initializer_list<std::string_view> optional) const {
  if (!value.is_object()) {
    Fail(pointer, "expected an object, found " + std::string(TypeName(value)));
  }
  for (std::string_view key : required) {
    if (!value.contains(key)) {
      Fail(pointer, "missing required key '" + std::string(key) + "'");
    }
  }
  for (const auto& [key, member] : value.items()) {
    bool known =
        std::find(required.begin(), required.end(), key) != required.end() ||
        std::find(optional.begin(), optional.end(), key) != optional.end();
    if (!known) {
      Fail(pointer + "/" + EscapePointerToken(key),
           "unknown key '" + key + "'");
    }
  }
  return value;
}

const Json& Document::Array(const Json& value,
                            const std::string& pointer) const {
  if (!value.is_array()) {
    Fail(pointer, "expected an array, found " + std::string(TypeName(value)));
  }
  return value;
}

const std::string& Document::String(const Json& value,
                                    const std::string& pointer) const {
  if (!value.is_string()) {
    Fail(pointer, "expected a string, found " + std::string(TypeName(value)));
  }
  return value.get_ref<const std::string&>();
}

std::int64_t Document::Integer(const Json& value,
                               const std::string& pointer) const {
  if (value.is_number_integer() && !value.is_number_unsigned()) {
    return value.get<std::int64_t>();
  }
  if (value.is_number_unsigned()) {
    auto u = value.get<std::uint64_t>();
    if (u <= static_cast<std::uint64_t>(
                 std::numeric_limits<std::int64_t>::max())) {
      return static_cast<std::int64_t>(u);
    }
    Fail(pointer, "integer out of range");
  }
  Fail(pointer, "expected an integer, found " + std::string(TypeName(value)));
}

std::uint64_t Document::Unsigned(const Json& value,
                                 const std::string& pointer) const {
  if (value.is_number_unsigned()) return value.get<std::uint64_t>();
  if (value.is_number_integer() && value.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(value.get<std::int64_t>());
  }
  Fail(pointer, "expected a non-negative integer, found " +
                    std::string(TypeName(value)));
}

bool Document::Boolean(const Json& value, const std::string& pointer) const {
  if (!value.is_boolean()) {
    Fail(pointer, "expected a boolean, found " + std::string(TypeName(value)));
  }
  return value.get<bool>();
}

void Document::ExpectHeader(const Json& object, std::string_view kind) const {
  std::int64_t version = Integer(object.at("version"), "/version");
  if (version != kFormatVersion) {
    Fail("/version", "unsupported format version " + std::to_string(version));
  }
  const std::string& actual = String(object.at("kind"), "/kind");
  if (actual != kind) {
    Fail("/kind", "expected kind '" + std::string(kind) + "', found '" +
                      actual + "'");
  }
}

std::string Dump(const Json& value) { return value.dump(2) + "\n"; }

}  // namespace ptesolve::json
