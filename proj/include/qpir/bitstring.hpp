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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qpir/errors.hpp"

namespace qpir {

/// An element of {0,1}^w.
///
/// Bit ordering convention, used identically everywhere in this library:
/// position 0 is the leftmost character of the textual form and the most
/// significant bit of the integer encoding returned by as_uint64().
class BitString {
 public:
  /// Parses a string over {0,1}. The string must be non-empty.
  explicit BitString(std::string_view text) {
    if (text.empty()) {
      throw DimensionError("BitString: width must be at least 1");
    }
    bits_.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
      const char c = text[i];
      if (c != '0' && c != '1') {
        throw FormatError("BitString: character '" + std::string(1, c) +
                          "' at position " + std::to_string(i + 1) +
                          " is not 0 or 1");
      }
      bits_.push_back(static_cast<std::uint8_t>(c - '0'));
    }
  }

  /// The all-zero string of the given width.
  static BitString zeros(std::size_t width) {
    return BitString(std::vector<std::uint8_t>(check_width(width), 0));
  }

  /// Builds a string of the given width from an unsigned value,
  /// most significant bit first. Requires width <= 64.
  static BitString from_value(std::size_t width, std::uint64_t value) {
    check_width(width);
    if (width > 64) {
      throw DimensionError("BitString::from_value: width > 64");
    }
    std::vector<std::uint8_t> bits(width);
    for (std::size_t i = 0; i < width; ++i) {
      bits[i] = static_cast<std::uint8_t>((value >> (width - 1 - i)) & 1u);
    }
    return BitString(std::move(bits));
  }

  std::size_t width() const { return bits_.size(); }

  /// Bit at position pos (0 = leftmost).
  int bit(std::size_t pos) const {
    if (pos >= bits_.size()) {
      throw RangeError("BitString::bit: position " + std::to_string(pos) +
                       " out of range for width " + std::to_string(bits_.size()));
    }
    return bits_[pos];
  }

  void set_bit(std::size_t pos, int value) {
    if (pos >= bits_.size()) {
      throw RangeError("BitString::set_bit: position out of range");
    }
    bits_[pos] = static_cast<std::uint8_t>(value & 1);
  }

  bool is_zero() const {
    for (auto b : bits_) {
      if (b) return false;
    }
    return true;
  }

  /// Contiguous sub-string of `count` bits starting at `pos`.
  BitString slice(std::size_t pos, std::size_t count) const {
    if (count < 1 || pos + count > bits_.size()) {
      throw RangeError("BitString::slice: range out of bounds");
    }
    return BitString(std::vector<std::uint8_t>(bits_.begin() + pos,
                                               bits_.begin() + pos + count));
  }

  /// Integer encoding, leftmost bit most significant. Requires width <= 64.
  std::uint64_t as_uint64() const {
    if (bits_.size() > 64) {
      throw DimensionError("BitString::as_uint64: width exceeds 64 bits");
    }
    std::uint64_t v = 0;
    for (auto b : bits_) v = (v << 1) | b;
    return v;
  }

  std::string to_string() const {
    std::string s(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i) {
      if (bits_[i]) s[i] = '1';
    }
    return s;
  }

  friend BitString operator^(const BitString& u, const BitString& v) {
    if (u.width() != v.width()) {
      throw DimensionError("xor: width mismatch (" + std::to_string(u.width()) +
                           " vs " + std::to_string(v.width()) + ")");
    }
    std::vector<std::uint8_t> out(u.bits_.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = u.bits_[i] ^ v.bits_[i];
    }
    return BitString(std::move(out));
  }

  bool operator==(const BitString&) const = default;
  auto operator<=>(const BitString&) const = default;

 private:
  explicit BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {}

  static std::size_t check_width(std::size_t width) {
    if (width < 1) {
      throw DimensionError("BitString: width must be at least 1");
    }
    return width;
  }

  std::vector<std::uint8_t> bits_;
};

/// GF(2) inner product u1 v1 xor ... xor uw vw.
inline int inner_product(const BitString& u, const BitString& v) {
  if (u.width() != v.width()) {
    throw DimensionError("inner_product: width mismatch (" +
                         std::to_string(u.width()) + " vs " +
                         std::to_string(v.width()) + ")");
  }
  int acc = 0;
  for (std::size_t i = 0; i < u.width(); ++i) {
    acc ^= (u.bit(i) & v.bit(i));
  }
  return acc;
}

}  // namespace qpir
