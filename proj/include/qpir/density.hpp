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

#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

#include "qpir/errors.hpp"
#include "qpir/label.hpp"

namespace qpir {

/// Dense Hermitian positive semidefinite matrix with unit trace,
/// row-major storage.
class DensityMatrix {
 public:
  explicit DensityMatrix(std::size_t dim)
      : dim_(dim), entries_(dim * dim, std::complex<double>{0.0, 0.0}) {
    if (dim < 1) {
      throw DimensionError("DensityMatrix: dimension must be at least 1");
    }
  }

  std::size_t dim() const { return dim_; }

  std::complex<double>& at(std::size_t i, std::size_t j) {
    return entries_[i * dim_ + j];
  }
  const std::complex<double>& at(std::size_t i, std::size_t j) const {
    return entries_[i * dim_ + j];
  }

  const std::vector<std::complex<double>>& data() const { return entries_; }

  std::complex<double> trace() const {
    std::complex<double> t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += at(i, i);
    return t;
  }

  double max_abs_diff(const DensityMatrix& other) const {
    if (other.dim_ != dim_) {
      throw DimensionError("DensityMatrix::max_abs_diff: dimension mismatch");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      m = std::max(m, std::abs(entries_[i] - other.entries_[i]));
    }
    return m;
  }

  double hermiticity_defect() const {
    double m = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        m = std::max(m, std::abs(at(i, j) - std::conj(at(j, i))));
      }
    }
    return m;
  }

 private:
  std::size_t dim_;
  std::vector<std::complex<double>> entries_;
};

/// A density operator that is diagonal in the computational basis, kept in
/// sparse form: entries map kept-subsystem labels to probabilities, sorted
/// by label. Scales to subsystems far beyond any dense matrix cap.
struct DiagonalDensity {
  std::size_t width = 0;  // label width of the kept subsystem, in qubits
  std::vector<std::pair<BasisLabel, double>> entries;

  double total() const {
    double t = 0.0;
    for (const auto& e : entries) t += e.second;
    return t;
  }

  double probability_of(const BasisLabel& label) const {
    for (const auto& [l, p] : entries) {
      if (l == label) return p;
      if (label < l) break;
    }
    return 0.0;
  }
};

/// Result of a partial trace: either an exact diagonal form or a dense
/// matrix, depending on which representation the state admits.
class ReducedDensity {
 public:
  static ReducedDensity from_diagonal(DiagonalDensity d) {
    return ReducedDensity(std::move(d));
  }
  static ReducedDensity from_dense(DensityMatrix m) {
    return ReducedDensity(std::move(m));
  }

  bool is_diagonal() const {
    return std::holds_alternative<DiagonalDensity>(value_);
  }

  const DiagonalDensity& diagonal() const {
    if (!is_diagonal()) {
      throw StateError("ReducedDensity: not in diagonal form");
    }
    return std::get<DiagonalDensity>(value_);
  }

  const DensityMatrix& dense() const {
    if (is_diagonal()) {
      throw StateError("ReducedDensity: not in dense form");
    }
    return std::get<DensityMatrix>(value_);
  }

 private:
  explicit ReducedDensity(DiagonalDensity d) : value_(std::move(d)) {}
  explicit ReducedDensity(DensityMatrix m) : value_(std::move(m)) {}

  std::variant<DiagonalDensity, DensityMatrix> value_;
};

/// Expands a diagonal form into a dense matrix (small subsystems only).
inline DensityMatrix diagonal_to_dense(const DiagonalDensity& d) {
  if (d.width > 30) {
    throw CapacityError("diagonal_to_dense: subsystem too wide");
  }
  DensityMatrix out(std::size_t{1} << d.width);
  for (const auto& [label, p] : d.entries) {
    const std::size_t i = label.as_uint64();
    out.at(i, i) = p;
  }
  return out;
}

}  // namespace qpir
