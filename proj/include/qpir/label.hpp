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
#include <vector>

#include "qpir/errors.hpp"

namespace qpir {

/// A fixed-width basis-state label. Bit positions follow the integer
/// encoding convention (position 0 is the least significant bit); systems
/// wider than 64 qubits spill into additional words. word(0) holds
/// positions [0, 64), word(1) positions [64, 128), and so on.
class BasisLabel {
 public:
  BasisLabel() = default;

  explicit BasisLabel(std::size_t width)
      : width_(width), words_((width + 63) / 64, 0) {
    if (width < 1) {
      throw DimensionError("BasisLabel: width must be at least 1");
    }
  }

  static BasisLabel from_value(std::size_t width, std::uint64_t value) {
    BasisLabel label(width);
    if (width < 64 && (value >> width) != 0) {
      throw RangeError("BasisLabel::from_value: value does not fit in width");
    }
    label.words_[0] = value;
    return label;
  }

  std::size_t width() const { return width_; }
  std::size_t word_count() const { return words_.size(); }
  std::uint64_t word(std::size_t i) const { return words_[i]; }
  const std::vector<std::uint64_t>& words() const { return words_; }

  bool bit(std::size_t pos) const {
    check_pos(pos);
    return (words_[pos / 64] >> (pos % 64)) & 1u;
  }

  void set_bit(std::size_t pos, bool value) {
    check_pos(pos);
    const std::uint64_t mask = std::uint64_t{1} << (pos % 64);
    if (value) {
      words_[pos / 64] |= mask;
    } else {
      words_[pos / 64] &= ~mask;
    }
  }

  void flip_bit(std::size_t pos) {
    check_pos(pos);
    words_[pos / 64] ^= std::uint64_t{1} << (pos % 64);
  }

  /// Reads `count` (<= 64) bits starting at position `pos`.
  std::uint64_t extract(std::size_t pos, std::size_t count) const {
    if (count == 0) return 0;
    if (count > 64 || pos + count > width_) {
      throw RangeError("BasisLabel::extract: field out of range");
    }
    const std::size_t w = pos / 64;
    const std::size_t sh = pos % 64;
    std::uint64_t v = words_[w] >> sh;
    if (sh != 0 && w + 1 < words_.size()) {
      v |= words_[w + 1] << (64 - sh);
    }
    if (count < 64) {
      v &= (std::uint64_t{1} << count) - 1;
    }
    return v;
  }

  /// XORs a `count` (<= 64) bit value into positions [pos, pos+count).
  void xor_field(std::size_t pos, std::size_t count, std::uint64_t value) {
    if (count == 0) return;
    if (count > 64 || pos + count > width_) {
      throw RangeError("BasisLabel::xor_field: field out of range");
    }
    if (count < 64) {
      value &= (std::uint64_t{1} << count) - 1;
    }
    const std::size_t w = pos / 64;
    const std::size_t sh = pos % 64;
    words_[w] ^= value << sh;
    if (sh != 0 && sh + count > 64) {
      words_[w + 1] ^= value >> (64 - sh);
    }
  }

  /// Copies `count` bits (any length) from src[src_pos..] into
  /// positions [dst_pos, dst_pos+count) of this label, XOR-depositing;
  /// the destination field is expected to be zero beforehand.
  void deposit(std::size_t dst_pos, std::size_t count, const BasisLabel& src,
               std::size_t src_pos) {
    while (count > 0) {
      const std::size_t chunk = count < 64 ? count : 64;
      xor_field(dst_pos, chunk, src.extract(src_pos, chunk));
      dst_pos += chunk;
      src_pos += chunk;
      count -= chunk;
    }
  }

  /// The label as a plain integer; requires width <= 64.
  std::uint64_t as_uint64() const {
    if (width_ > 64) {
      throw DimensionError("BasisLabel::as_uint64: width exceeds 64 bits");
    }
    return words_[0];
  }

  /// Hex rendering (most significant word first), used for dumps of
  /// systems wider than 64 qubits.
  std::string to_hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out = "0x";
    bool leading = true;
    for (std::size_t i = words_.size(); i-- > 0;) {
      for (int nib = 15; nib >= 0; --nib) {
        const unsigned d = (words_[i] >> (4 * nib)) & 0xf;
        if (leading && d == 0 && !(i == 0 && nib == 0)) continue;
        leading = false;
        out.push_back(digits[d]);
      }
    }
    return out;
  }

  friend bool operator==(const BasisLabel& a, const BasisLabel& b) {
    return a.width_ == b.width_ && a.words_ == b.words_;
  }

  /// Numeric order: most significant word decides first.
  friend std::strong_ordering operator<=>(const BasisLabel& a,
                                          const BasisLabel& b) {
    if (a.width_ != b.width_) return a.width_ <=> b.width_;
    for (std::size_t i = a.words_.size(); i-- > 0;) {
      if (a.words_[i] != b.words_[i]) return a.words_[i] <=> b.words_[i];
    }
    return std::strong_ordering::equal;
  }

 private:
  void check_pos(std::size_t pos) const {
    if (pos >= width_) {
      throw RangeError("BasisLabel: bit position " + std::to_string(pos) +
                       " out of range for width " + std::to_string(width_));
    }
  }

  std::size_t width_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BasisLabelHash {
  std::size_t operator()(const BasisLabel& label) const {
    // FNV-1a over the words.
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint64_t w : label.words()) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace qpir
