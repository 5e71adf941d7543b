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

// Brute-force statevector backend holding all 2^(2r+ell) amplitudes.
// It is the ground-truth oracle for the sparse engine and the workhorse
// for density-matrix computations at small scale.

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qpir/config.hpp"
#include "qpir/database.hpp"
#include "qpir/density.hpp"
#include "qpir/distribution.hpp"
#include "qpir/errors.hpp"
#include "qpir/layout.hpp"

namespace qpir {

namespace detail {

// %.17g round-trips doubles exactly; shared by both backends so honest
// protocol states dump to byte-identical text.
inline std::string format_amplitude(std::complex<double> a) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g %.17g", a.real(), a.imag());
  return buf;
}

}  // namespace detail

class DenseState {
 public:
  DenseState(RegisterLayout layout, std::vector<std::complex<double>> amplitudes)
      : layout_(layout), amps_(std::move(amplitudes)) {
    if (layout_.total_qubits() > 62) {
      throw CapacityError("DenseState: system too wide for dense indexing");
    }
    const std::uint64_t want = std::uint64_t{1} << layout_.total_qubits();
    if (amps_.size() != want) {
      throw DimensionError("DenseState: amplitude count " +
                           std::to_string(amps_.size()) + " != 2^" +
                           std::to_string(layout_.total_qubits()));
    }
    const double n = norm_of(amps_);
    if (std::abs(n - 1.0) > 1e-9) {
      throw StateError("DenseState: state is not normalized (norm " +
                       std::to_string(n) + ")");
    }
  }

  const RegisterLayout& layout() const { return layout_; }
  std::uint64_t dimension() const { return amps_.size(); }

  const std::vector<std::complex<double>>& amplitudes() const { return amps_; }
  std::complex<double> amplitude(std::uint64_t basis_index) const {
    return amps_[basis_index];
  }

  double norm() const { return norm_of(amps_); }

  double max_abs_imag() const {
    double m = 0.0;
    for (const auto& a : amps_) m = std::max(m, std::abs(a.imag()));
    return m;
  }

  // Mutable access for the gate implementations below.
  std::vector<std::complex<double>>& raw() { return amps_; }

 private:
  static double norm_of(const std::vector<std::complex<double>>& v) {
    double s = 0.0;
    for (const auto& a : v) s += std::norm(a);
    return std::sqrt(s);
  }

  RegisterLayout layout_;
  std::vector<std::complex<double>> amps_;
};

namespace detail {

inline void check_dense_capacity(const RegisterLayout& layout,
                                 const Caps& caps) {
  const std::size_t total = layout.total_qubits();
  if (total > caps.dense_qubit_cap) {
    throw CapacityError(
        "dense backend: " + std::to_string(total) + " qubits exceed the cap of " +
        std::to_string(caps.dense_qubit_cap) +
        "; use the sparse backend for instances of this size");
  }
  if (total > 62) {
    throw CapacityError("dense backend: system too wide for 64-bit indexing");
  }
}

// Basis label of (x)_R (x')_R' (q_1..q_ell)_Q for one database, with the Q
// bits computed as inner products against x.
inline std::uint64_t phi_label(const RegisterLayout& layout,
                               const std::vector<std::uint64_t>& item_masks,
                               std::uint64_t x, std::uint64_t x_prime) {
  const std::size_t ell = layout.ell();
  const std::size_t r = layout.r();
  std::uint64_t idx = (x << (ell + r)) | (x_prime << ell);
  for (std::size_t k = 1; k <= ell; ++k) {
    const std::uint64_t parity = std::popcount(x & item_masks[k - 1]) & 1u;
    idx |= parity << (ell - k);
  }
  return idx;
}

inline std::vector<std::uint64_t> item_masks(const Database& db) {
  std::vector<std::uint64_t> masks;
  masks.reserve(db.ell());
  for (const auto& item : db.items()) masks.push_back(item.as_uint64());
  return masks;
}

inline DenseState prepare_dense(const Database& db, bool pin_r_prime_to_zero,
                                const Caps& caps) {
  const RegisterLayout layout = RegisterLayout::for_database(db);
  check_dense_capacity(layout, caps);
  const std::size_t r = layout.r();
  std::vector<std::complex<double>> amps(std::uint64_t{1}
                                         << layout.total_qubits());
  const auto masks = item_masks(db);
  const double amp = 1.0 / std::sqrt(static_cast<double>(std::uint64_t{1} << r));
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << r); ++x) {
    const std::uint64_t x_prime = pin_r_prime_to_zero ? 0 : x;
    amps[phi_label(layout, masks, x, x_prime)] = amp;
  }
  return DenseState(layout, std::move(amps));
}

}  // namespace detail

/// The superposed database state: (1/sqrt(2^r)) sum_x |x> |x> |x.a^1> ... |x.a^ell>.
inline DenseState prepare_phi(const Database& db, const Caps& caps = {}) {
  return detail::prepare_dense(db, /*pin_r_prime_to_zero=*/false, caps);
}

/// The dishonest preparation with R' pinned to |0>:
/// (1/sqrt(2^r)) sum_x |x> |0> |x.a^1> ... |x.a^ell>.
inline DenseState prepare_phi_prime(const Database& db, const Caps& caps = {}) {
  return detail::prepare_dense(db, /*pin_r_prime_to_zero=*/true, caps);
}

/// Pauli Z on one qubit: negates every amplitude whose bit at `qubit` is 1.
inline void apply_z(DenseState& state, std::size_t qubit) {
  const std::uint64_t mask = std::uint64_t{1}
                             << state.layout().bit_position(qubit);
  auto& amps = state.raw();
  for (std::uint64_t idx = 0; idx < amps.size(); ++idx) {
    if (idx & mask) amps[idx] = -amps[idx];
  }
}

namespace detail {

inline void check_wide_register(RegisterRef reg, const char* what) {
  if (reg.kind != RegisterRef::Kind::r &&
      reg.kind != RegisterRef::Kind::r_prime) {
    throw DimensionError(std::string(what) + ": register must be R or R'");
  }
}

}  // namespace detail

/// Transform with kernel (-1)^{y.z} / sqrt(2^r) on a width-r register,
/// realized as r in-place single-qubit Hadamard butterflies.
inline void apply_qft(DenseState& state, RegisterRef reg) {
  detail::check_wide_register(reg, "apply_qft");
  const auto& layout = state.layout();
  auto& amps = state.raw();
  static const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t qubit : layout.register_qubits(reg)) {
    const std::uint64_t mask = std::uint64_t{1} << layout.bit_position(qubit);
    for (std::uint64_t idx = 0; idx < amps.size(); ++idx) {
      if ((idx & mask) == 0) {
        const std::complex<double> a0 = amps[idx];
        const std::complex<double> a1 = amps[idx | mask];
        amps[idx] = (a0 + a1) * inv_sqrt2;
        amps[idx | mask] = (a0 - a1) * inv_sqrt2;
      }
    }
  }
}

/// Register-wise CNOT: |y>_c |z>_t -> |y>_c |z xor y>_t.
inline void apply_cnot_reg(DenseState& state, RegisterRef control,
                           RegisterRef target) {
  detail::check_wide_register(control, "apply_cnot_reg");
  detail::check_wide_register(target, "apply_cnot_reg");
  if (control == target) {
    throw DimensionError("apply_cnot_reg: control and target must differ");
  }
  const auto& layout = state.layout();
  const std::size_t c_lsb = layout.register_lsb(control);
  const std::size_t t_lsb = layout.register_lsb(target);
  const std::uint64_t field = (std::uint64_t{1} << layout.r()) - 1;
  auto& amps = state.raw();
  for (std::uint64_t idx = 0; idx < amps.size(); ++idx) {
    const std::uint64_t y = (idx >> c_lsb) & field;
    const std::uint64_t other = idx ^ (y << t_lsb);
    if (idx < other) std::swap(amps[idx], amps[other]);
  }
}

/// Parity writer U_b on (R, Q_k): flips qubit Q_k exactly when b.y = 1,
/// y being the R content.
inline void apply_u_b(DenseState& state, std::size_t k, const BitString& b) {
  const auto& layout = state.layout();
  if (b.width() != layout.r()) {
    throw DimensionError("apply_u_b: b has width " + std::to_string(b.width()) +
                         ", expected " + std::to_string(layout.r()));
  }
  const std::uint64_t control_mask = b.as_uint64()
                                     << layout.register_lsb(RegisterRef::R());
  const std::uint64_t flip = std::uint64_t{1}
                             << layout.register_lsb(RegisterRef::Q(k));
  auto& amps = state.raw();
  for (std::uint64_t idx = 0; idx < amps.size(); ++idx) {
    if (std::popcount(idx & control_mask) & 1u) {
      const std::uint64_t other = idx ^ flip;
      if (idx < other) std::swap(amps[idx], amps[other]);
    }
  }
}

/// Exact marginal of a computational-basis measurement on `reg`.
/// Does not mutate the state.
inline Distribution measure_register(const DenseState& state, RegisterRef reg) {
  const auto& layout = state.layout();
  if (reg.kind == RegisterRef::Kind::q_block) {
    throw DimensionError("measure_register: measure a single register");
  }
  const std::size_t lsb = layout.register_lsb(reg);
  const std::size_t width = layout.register_width(reg);
  const std::uint64_t field = (std::uint64_t{1} << width) - 1;
  std::map<std::uint64_t, double> acc;
  const auto& amps = state.amplitudes();
  for (std::uint64_t idx = 0; idx < amps.size(); ++idx) {
    const double p = std::norm(amps[idx]);
    if (p > 0.0) acc[(idx >> lsb) & field] += p;
  }
  Distribution dist;
  dist.width = width;
  dist.entries.assign(acc.begin(), acc.end());
  return dist;
}

/// Reduced density matrix on the registers NOT listed in `traced`.
/// The kept sub-label orders kept qubits by ascending qubit index, most
/// significant first (same convention as full labels).
inline DensityMatrix partial_trace(const DenseState& state,
                                   const std::vector<RegisterRef>& traced,
                                   const Caps& caps = {}) {
  const auto& layout = state.layout();
  std::vector<bool> is_traced(layout.total_qubits(), false);
  for (const auto& reg : traced) {
    for (std::size_t q : layout.register_qubits(reg)) is_traced[q] = true;
  }
  std::vector<std::size_t> kept_pos;
  std::vector<std::size_t> traced_pos;
  for (std::size_t q = 0; q < layout.total_qubits(); ++q) {
    (is_traced[q] ? traced_pos : kept_pos).push_back(layout.bit_position(q));
  }
  if (kept_pos.size() > 62) {
    throw CapacityError("partial_trace: kept subsystem too wide");
  }
  const std::uint64_t kept_dim = std::uint64_t{1} << kept_pos.size();
  if (kept_dim > caps.density_dim_cap) {
    throw CapacityError("partial_trace: kept dimension " +
                        std::to_string(kept_dim) + " exceeds cap " +
                        std::to_string(caps.density_dim_cap));
  }

  const auto gather = [](const std::vector<std::size_t>& pos,
                         std::uint64_t idx) {
    std::uint64_t out = 0;
    for (std::size_t j = 0; j < pos.size(); ++j) {
      out |= ((idx >> pos[j]) & 1u) << (pos.size() - 1 - j);
    }
    return out;
  };

  // Group nonzero amplitudes by traced-subsystem content, then add each
  // group's outer product.
  std::map<std::uint64_t, std::vector<std::pair<std::uint64_t, std::complex<double>>>>
      groups;
  const auto& amps = state.amplitudes();
  for (std::uint64_t idx = 0; idx < amps.size(); ++idx) {
    if (amps[idx] != std::complex<double>{0.0, 0.0}) {
      groups[gather(traced_pos, idx)].emplace_back(gather(kept_pos, idx),
                                                   amps[idx]);
    }
  }
  DensityMatrix rho(kept_dim);
  for (const auto& [t, members] : groups) {
    for (const auto& [k1, a1] : members) {
      for (const auto& [k2, a2] : members) {
        rho.at(k1, k2) += a1 * std::conj(a2);
      }
    }
  }
  return rho;
}

/// Text dump "basis_index amplitude_re amplitude_im", nonzero entries only,
/// sorted by basis index. Shared format with the sparse backend.
inline std::string dump_state(const DenseState& state) {
  std::string out;
  const auto& amps = state.amplitudes();
  for (std::uint64_t idx = 0; idx < amps.size(); ++idx) {
    if (amps[idx] != std::complex<double>{0.0, 0.0}) {
      out += std::to_string(idx);
      out += ' ';
      out += detail::format_amplitude(amps[idx]);
      out += '\n';
    }
  }
  return out;
}

}  // namespace qpir
