//
// Copyright 2026 the qpir authors
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
//

#pragma once

#include <cstddef>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qpir/bitstring.hpp"
#include "qpir/detail/sha256.hpp"
#include "qpir/errors.hpp"

namespace qpir {

/// Type-level width caps. They keep every integer encoding used by the
/// simulators inside 64-bit arithmetic with headroom; the simulators
/// impose their own tighter limits on top.
inline constexpr std::size_t kMaxItemWidth = 30;
inline constexpr std::size_t kMaxItems = std::size_t{1} << 20;

/// An ordered sequence of ell equal-width items. Indices are 1-based
/// throughout the protocol surface, matching the usual PIR convention.
class Database {
 public:
  explicit Database(std::vector<BitString> items) : items_(std::move(items)) {
    if (items_.empty()) {
      throw FormatError("Database: at least one item is required");
    }
    if (items_.size() > kMaxItems) {
      throw CapacityError("Database: item count " +
                          std::to_string(items_.size()) + " exceeds cap " +
                          std::to_string(kMaxItems));
    }
    const std::size_t r = items_.front().width();
    if (r > kMaxItemWidth) {
      throw CapacityError("Database: item width " + std::to_string(r) +
                          " exceeds cap " + std::to_string(kMaxItemWidth));
    }
    for (std::size_t k = 0; k < items_.size(); ++k) {
      if (items_[k].width() != r) {
        throw FormatError("Database: item " + std::to_string(k + 1) +
                          " has width " + std::to_string(items_[k].width()) +
                          ", expected " + std::to_string(r));
      }
    }
  }

  std::size_t ell() const { return items_.size(); }
  std::size_t r() const { return items_.front().width(); }

  /// Item a^k, k in [1, ell].
  const BitString& item(std::size_t k) const {
    if (k < 1 || k > items_.size()) {
      throw RangeError("Database::item: index " + std::to_string(k) +
                       " out of range [1, " + std::to_string(items_.size()) +
                       "]");
    }
    return items_[k - 1];
  }

  const std::vector<BitString>& items() const { return items_; }

  bool operator==(const Database&) const = default;

 private:
  std::vector<BitString> items_;
};

/// Parses the newline-delimited database format: one item per line, each a
/// string over {0,1}, all lines the same length, trailing newline optional.
inline Database parse_database(std::string_view text) {
  if (text.empty()) {
    throw FormatError("database input is empty");
  }
  std::vector<BitString> items;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  std::size_t expected_width = 0;
  while (pos < text.size()) {
    ++line_no;
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (line.empty()) {
      throw FormatError("line " + std::to_string(line_no) + ": empty line");
    }
    for (char c : line) {
      if (c != '0' && c != '1') {
        throw FormatError("line " + std::to_string(line_no) + ": character '" +
                          std::string(1, c) + "' is not 0 or 1");
      }
    }
    if (items.empty()) {
      expected_width = line.size();
    } else if (line.size() != expected_width) {
      throw FormatError("line " + std::to_string(line_no) + ": width " +
                        std::to_string(line.size()) + " does not match width " +
                        std::to_string(expected_width) + " of line 1");
    }
    items.emplace_back(line);
  }
  if (items.empty()) {
    throw FormatError("database input is empty");
  }
  return Database(std::move(items));
}

inline Database load_database(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_database(buf.str());
}

/// Canonical text form: one item per line with a trailing newline.
/// parse_database(serialize_database(db)) == db.
inline std::string serialize_database(const Database& db) {
  std::string out;
  out.reserve(db.ell() * (db.r() + 1));
  for (const auto& item : db.items()) {
    out += item.to_string();
    out += '\n';
  }
  return out;
}

/// 256-bit content hash of the canonical serialization, hex-encoded.
inline std::string database_digest(const Database& db) {
  return detail::sha256_hex(serialize_database(db));
}

}  // namespace qpir
