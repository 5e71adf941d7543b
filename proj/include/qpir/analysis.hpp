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

// Quantitative privacy verification and the malicious-server demonstration.
//
// The server's view of a session is fixed as the reduced state it holds on
// (R, Q_1..Q_ell) after Step 2, together with its classical knowledge of
// the database. With the honest preparation, tracing out R' kills the
// user's phase and the view is the same diagonal mixture for every index.
// With the dishonest preparation |Phi'_A> (R' pinned to |0>), the phase
// survives, the views differ across indices, and the server can decode the
// index itself: uncompute every Q_k with U_{a^k}, transform R, measure.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <json.hpp>

#include "qpir/config.hpp"
#include "qpir/database.hpp"
#include "qpir/dense.hpp"
#include "qpir/density.hpp"
#include "qpir/errors.hpp"
#include "qpir/layout.hpp"
#include "qpir/sparse.hpp"

namespace qpir {

enum class Preparation { honest, malicious };

/// (1/2) sum |eigenvalues of rho1 - rho2|, by Hermitian eigendecomposition.
inline double trace_distance(const DensityMatrix& rho1,
                             const DensityMatrix& rho2,
                             const Caps& caps = {}) {
  if (rho1.dim() != rho2.dim()) {
    throw DimensionError("trace_distance: dimension mismatch (" +
                         std::to_string(rho1.dim()) + " vs " +
                         std::to_string(rho2.dim()) + ")");
  }
  if (rho1.dim() > caps.eigen_dim_cap) {
    throw CapacityError("trace_distance: dimension " +
                        std::to_string(rho1.dim()) + " exceeds eigen cap " +
                        std::to_string(caps.eigen_dim_cap));
  }
  const auto n = static_cast<Eigen::Index>(rho1.dim());
  Eigen::MatrixXcd delta(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      delta(i, j) = rho1.at(i, j) - rho2.at(i, j);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      delta, Eigen::EigenvaluesOnly);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    sum += std::abs(solver.eigenvalues()[i]);
  }
  double d = 0.5 * sum;
  if (d > 1.0 && d < 1.0 + 1e-9) d = 1.0;
  return d;
}

/// Fast path for commuting (diagonal) states: total variation distance.
inline double trace_distance(const DiagonalDensity& rho1,
                             const DiagonalDensity& rho2) {
  if (rho1.width != rho2.width) {
    throw DimensionError("trace_distance: subsystem width mismatch");
  }
  double sum = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < rho1.entries.size() || j < rho2.entries.size()) {
    if (j == rho2.entries.size() ||
        (i < rho1.entries.size() && rho1.entries[i].first < rho2.entries[j].first)) {
      sum += std::abs(rho1.entries[i].second);
      ++i;
    } else if (i == rho1.entries.size() ||
               rho2.entries[j].first < rho1.entries[i].first) {
      sum += std::abs(rho2.entries[j].second);
      ++j;
    } else {
      sum += std::abs(rho1.entries[i].second - rho2.entries[j].second);
      ++i;
      ++j;
    }
  }
  return 0.5 * sum;
}

inline double trace_distance(const ReducedDensity& rho1,
                             const ReducedDensity& rho2,
                             const Caps& caps = {}) {
  if (rho1.is_diagonal() && rho2.is_diagonal()) {
    return trace_distance(rho1.diagonal(), rho2.diagonal());
  }
  const auto as_dense = [](const ReducedDensity& rho) {
    return rho.is_diagonal() ? diagonal_to_dense(rho.diagonal()) : rho.dense();
  };
  return trace_distance(as_dense(rho1), as_dense(rho2), caps);
}

/// The server's view for index i: run Steps 1-2, trace out R'. Honest
/// preparation on the sparse backend yields the exact diagonal form;
/// the dense backend yields a dense matrix.
inline ReducedDensity server_view(const Database& db, std::size_t index,
                                  BackendKind backend,
                                  Preparation prep = Preparation::honest,
                                  const Caps& caps = {}) {
  if (index < 1 || index > db.ell()) {
    throw RangeError("server_view: index out of range");
  }
  const RegisterLayout layout = RegisterLayout::for_database(db);
  const std::vector<RegisterRef> traced = {RegisterRef::RPrime()};
  if (backend == BackendKind::dense) {
    DenseState state = prep == Preparation::honest
                           ? prepare_phi(db, caps)
                           : prepare_phi_prime(db, caps);
    apply_z(state, layout.q_qubit(index));
    return ReducedDensity::from_dense(partial_trace(state, traced, caps));
  }
  SparseState state = prep == Preparation::honest
                          ? sparse_prepare_phi(db, caps)
                          : sparse_prepare_phi_prime(db, caps);
  apply_z(state, layout.q_qubit(index));
  return sparse_partial_trace(state, traced, caps);
}

struct PrivacyPair {
  std::size_t i = 0;
  std::size_t j = 0;
  double trace_distance = 0.0;
};

struct PrivacyReport {
  std::string database_digest;
  std::vector<PrivacyPair> pairs;
  double max_distance = 0.0;
  std::string method;  // "exact-diagonal" or "dense-eigen"

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["database_digest"] = database_digest;
    j["pairs"] = nlohmann::ordered_json::array();
    for (const auto& p : pairs) {
      nlohmann::ordered_json jp;
      jp["i"] = p.i;
      jp["j"] = p.j;
      jp["trace_distance"] = p.trace_distance;
      j["pairs"].push_back(std::move(jp));
    }
    j["max_distance"] = max_distance;
    j["method"] = method;
    return j;
  }
};

/// Computes the view for every index and the trace distance of every pair.
/// Requires ell >= 2; a single-item database is vacuously private.
inline PrivacyReport verify_privacy(const Database& db, BackendKind backend,
                                    Preparation prep = Preparation::honest,
                                    const Caps& caps = {}) {
  if (db.ell() < 2) {
    throw RangeError("verify_privacy: ell must be at least 2");
  }
  std::vector<ReducedDensity> views;
  views.reserve(db.ell());
  bool all_diagonal = true;
  for (std::size_t i = 1; i <= db.ell(); ++i) {
    views.push_back(server_view(db, i, backend, prep, caps));
    all_diagonal = all_diagonal && views.back().is_diagonal();
  }
  PrivacyReport report;
  report.database_digest = database_digest(db);
  report.method = all_diagonal ? "exact-diagonal" : "dense-eigen";
  for (std::size_t i = 1; i <= db.ell(); ++i) {
    for (std::size_t j = i + 1; j <= db.ell(); ++j) {
      const double d = trace_distance(views[i - 1], views[j - 1], caps);
      report.pairs.push_back({i, j, d});
      report.max_distance = std::max(report.max_distance, d);
    }
  }
  return report;
}

struct AttackResult {
  std::size_t true_index = 0;
  BitString recovered_item = BitString::zeros(1);
  std::vector<std::size_t> candidate_indices;
  bool success = false;
  /// Probability the attack's measurement assigns to the recovered item
  /// (not part of the serialized form).
  double item_probability = 0.0;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["true_index"] = true_index;
    j["recovered_item"] = recovered_item.to_string();
    j["candidate_indices"] = candidate_indices;
    j["success"] = success;
    return j;
  }
};

/// The malicious-server run: prepare |Phi'_A> instead of |Phi_A>, let the
/// honest user apply its Step 2 phase, then instead of continuing the
/// protocol uncompute every Q_k, transform R and measure it. The phase
/// (-1)^{x.a^i} survives because R' holds no copy of x, so the measurement
/// yields a^i with probability 1. The index is identified exactly when a^i
/// is unique in the database; otherwise the full ambiguity set is reported.
inline AttackResult run_attack(const Database& db, std::size_t index,
                               const Caps& caps = {}) {
  if (index < 1 || index > db.ell()) {
    throw RangeError("run_attack: index out of range");
  }
  const RegisterLayout layout = RegisterLayout::for_database(db);
  DenseState state = prepare_phi_prime(db, caps);        // Step 1'
  apply_z(state, layout.q_qubit(index));                 // Step 2 (honest user)
  for (std::size_t k = 1; k <= db.ell(); ++k) {          // Step 3'
    apply_u_b(state, k, db.item(k));
  }
  apply_qft(state, RegisterRef::R());
  const Distribution dist = measure_register(state, RegisterRef::R());

  AttackResult result;
  result.true_index = index;
  const auto [value, probability] = dist.mode();
  result.recovered_item = BitString::from_value(layout.r(), value);
  result.item_probability = probability;
  for (std::size_t k = 1; k <= db.ell(); ++k) {
    if (db.item(k) == result.recovered_item) {
      result.candidate_indices.push_back(k);
    }
  }
  result.success = result.candidate_indices.size() == 1 &&
                   result.candidate_indices.front() == index;
  return result;
}

}  // namespace qpir
