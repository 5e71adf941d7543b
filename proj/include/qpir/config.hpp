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
#include <string>

namespace qpir {

enum class BackendKind { dense, sparse };

inline std::string backend_name(BackendKind kind) {
  return kind == BackendKind::dense ? "dense" : "sparse";
}

/// Capacity caps and numeric thresholds. Defaults keep every run
/// desk-scale; callers may override per call.
struct Caps {
  /// Largest total qubit count the dense backend will allocate
  /// (2^cap complex doubles; 22 is 64 MiB).
  std::size_t dense_qubit_cap = 22;

  /// Largest kept-subsystem dimension a dense density matrix may have.
  std::size_t density_dim_cap = std::size_t{1} << 14;

  /// Largest dimension accepted by the eigenvalue-based trace distance.
  std::size_t eigen_dim_cap = std::size_t{1} << 10;

  /// Sparse backend limits: register width and item count.
  std::size_t sparse_r_cap = 24;
  std::size_t sparse_ell_cap = std::size_t{1} << 20;

  /// Term budget for the sparse transform; exceeding it raises a
  /// capacity error instead of thrashing.
  std::size_t qft_term_budget = std::size_t{1} << 22;

  /// Amplitudes at or below this magnitude are pruned.
  double prune_threshold = 1e-12;
};

}  // namespace qpir
