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
#include <cstdint>
#include <string>
#include <vector>

#include "qpir/database.hpp"
#include "qpir/errors.hpp"

namespace qpir {

/// Names one register of the protocol system: R, R', a single Q_k, or the
/// whole block Q_1..Q_ell (used for message hand-offs and custody).
struct RegisterRef {
  enum class Kind { r, r_prime, q, q_block };

  Kind kind = Kind::r;
  std::size_t k = 0;  // 1-based, meaningful for Kind::q only

  static RegisterRef R() { return {Kind::r, 0}; }
  static RegisterRef RPrime() { return {Kind::r_prime, 0}; }
  static RegisterRef Q(std::size_t k) { return {Kind::q, k}; }
  static RegisterRef QBlock() { return {Kind::q_block, 0}; }

  bool operator==(const RegisterRef&) const = default;
};

/// Fixed qubit numbering for the ell+2 registers:
///   R   = qubits [0, r)
///   R'  = qubits [r, 2r)
///   Q_k = qubit 2r + (k-1),  k in [1, ell]
///
/// A computational basis state is encoded as an unsigned integer (or wide
/// bit label) whose bit at position total_qubits-1-q holds qubit q, so R is
/// the most significant block and register extraction is a shift-and-mask.
class RegisterLayout {
 public:
  RegisterLayout(std::size_t r, std::size_t ell) : r_(r), ell_(ell) {
    if (r < 1 || ell < 1) {
      throw DimensionError("RegisterLayout: r and ell must be at least 1");
    }
    if (r > kMaxItemWidth) {
      throw CapacityError("RegisterLayout: r " + std::to_string(r) +
                          " exceeds cap " + std::to_string(kMaxItemWidth));
    }
    if (ell > kMaxItems) {
      throw CapacityError("RegisterLayout: ell " + std::to_string(ell) +
                          " exceeds cap " + std::to_string(kMaxItems));
    }
  }

  static RegisterLayout for_database(const Database& db) {
    return RegisterLayout(db.r(), db.ell());
  }

  std::size_t r() const { return r_; }
  std::size_t ell() const { return ell_; }
  std::size_t total_qubits() const { return 2 * r_ + ell_; }

  /// Qubit index of Q_k, k in [1, ell].
  std::size_t q_qubit(std::size_t k) const {
    check_q_index(k);
    return 2 * r_ + (k - 1);
  }

  /// Label bit position of qubit q (0 = least significant).
  std::size_t bit_position(std::size_t qubit) const {
    if (qubit >= total_qubits()) {
      throw RangeError("bit_position: qubit " + std::to_string(qubit) +
                       " out of range [0, " + std::to_string(total_qubits()) +
                       ")");
    }
    return total_qubits() - 1 - qubit;
  }

  std::size_t register_width(RegisterRef reg) const {
    switch (reg.kind) {
      case RegisterRef::Kind::r:
      case RegisterRef::Kind::r_prime:
        return r_;
      case RegisterRef::Kind::q:
        check_q_index(reg.k);
        return 1;
      case RegisterRef::Kind::q_block:
        return ell_;
    }
    return 0;
  }

  /// Least significant label bit position of the register's contiguous
  /// field. The field occupies [register_lsb, register_lsb+width).
  std::size_t register_lsb(RegisterRef reg) const {
    switch (reg.kind) {
      case RegisterRef::Kind::r:
        return ell_ + r_;
      case RegisterRef::Kind::r_prime:
        return ell_;
      case RegisterRef::Kind::q:
        check_q_index(reg.k);
        return ell_ - reg.k;
      case RegisterRef::Kind::q_block:
        return 0;
    }
    return 0;
  }

  /// Qubit indices of the register, ascending.
  std::vector<std::size_t> register_qubits(RegisterRef reg) const {
    std::vector<std::size_t> out;
    switch (reg.kind) {
      case RegisterRef::Kind::r:
        for (std::size_t j = 0; j < r_; ++j) out.push_back(j);
        break;
      case RegisterRef::Kind::r_prime:
        for (std::size_t j = 0; j < r_; ++j) out.push_back(r_ + j);
        break;
      case RegisterRef::Kind::q:
        out.push_back(q_qubit(reg.k));
        break;
      case RegisterRef::Kind::q_block:
        for (std::size_t k = 1; k <= ell_; ++k) out.push_back(q_qubit(k));
        break;
    }
    return out;
  }

  std::string register_name(RegisterRef reg) const {
    switch (reg.kind) {
      case RegisterRef::Kind::r:
        return "R";
      case RegisterRef::Kind::r_prime:
        return "R'";
      case RegisterRef::Kind::q:
        return "Q" + std::to_string(reg.k);
      case RegisterRef::Kind::q_block:
        return "Q1..Q" + std::to_string(ell_);
    }
    return "";
  }

  bool operator==(const RegisterLayout&) const = default;

 private:
  void check_q_index(std::size_t k) const {
    if (k < 1 || k > ell_) {
      throw RangeError("Q register index " + std::to_string(k) +
                       " out of range [1, " + std::to_string(ell_) + "]");
    }
  }

  std::size_t r_;
  std::size_t ell_;
};

}  // namespace qpir
