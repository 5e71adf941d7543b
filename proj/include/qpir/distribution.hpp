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
#include <random>
#include <utility>
#include <vector>

#include "qpir/bitstring.hpp"
#include "qpir/errors.hpp"

namespace qpir {

/// Exact outcome distribution of a computational-basis measurement on one
/// register. Entries are sorted by outcome value and carry only nonzero
/// probabilities.
struct Distribution {
  std::size_t width = 0;
  std::vector<std::pair<std::uint64_t, double>> entries;

  double probability_of(std::uint64_t value) const {
    for (const auto& [v, p] : entries) {
      if (v == value) return p;
      if (v > value) break;
    }
    return 0.0;
  }

  /// Highest-probability outcome; ties resolve to the smallest value.
  std::pair<std::uint64_t, double> mode() const {
    if (entries.empty()) {
      throw StateError("Distribution::mode: empty distribution");
    }
    std::pair<std::uint64_t, double> best = entries.front();
    for (const auto& e : entries) {
      if (e.second > best.second) best = e;
    }
    return best;
  }

  BitString outcome_bits(std::uint64_t value) const {
    return BitString::from_value(width, value);
  }

  double total() const {
    double t = 0.0;
    for (const auto& e : entries) t += e.second;
    return t;
  }
};

/// Draws one outcome reproducibly. The generator is the standard 64-bit
/// Mersenne Twister seeded with `seed`; the uniform variate is
/// (next() >> 11) * 2^-53 and the cumulative walk runs over entries in
/// value order, so results are identical across platforms bit for bit.
inline std::uint64_t sample(const Distribution& dist, std::uint64_t seed) {
  if (dist.entries.empty()) {
    throw StateError("sample: empty distribution");
  }
  std::mt19937_64 gen(seed);
  const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
  double cum = 0.0;
  for (const auto& [value, p] : dist.entries) {
    cum += p;
    if (u < cum) return value;
  }
  return dist.entries.back().first;
}

}  // namespace qpir
