// Copyright 2026 The obliqforest Authors. All Rights Reserved.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace obliqforest {

// Stream tags used to derive independent per-purpose rng streams from one
// user-facing seed. Keeping bootstrap weights and tree growth on separate
// streams lets a loaded model regenerate its in-bag weights without
// replaying the growth stream.
enum : std::uint64_t {
  kStreamBootstrap = 1,
  kStreamGrow = 2,
  kStreamPermute = 3,
  kStreamSim = 4,
  kStreamBenchSplit = 5,
  kStreamBenchFit = 6,
};

/// splitmix64 finalizer; used to spread (seed, purpose, index) triples into
/// well-separated 64-bit engine seeds.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  return mix64(a ^ mix64(b));
}

/// Deterministic random generator with portable helper draws.
///
/// The raw engine is std::mt19937_64 (its output sequence is fully pinned by
/// the standard); all derived draws (bounded ints, uniforms, normals,
/// shuffles) are implemented here rather than with std::*_distribution so
/// results do not depend on the standard library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  /// Independent stream keyed by (seed, purpose, index); scheduling-free
  /// reproducibility across threads relies on these streams.
  static Rng stream(std::uint64_t seed, std::uint64_t purpose, std::uint64_t index) {
    return Rng(mix64(mix64(seed, purpose), index));
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Unbiased uniform integer in [0, n). n must be >= 1.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t r = next_u64();
    while (r >= limit) r = next_u64();
    return r % n;
  }

  /// Standard normal via the Marsaglia polar method (caches the spare draw).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

  /// k distinct indices drawn uniformly from {0, ..., n-1} (partial
  /// Fisher-Yates); returns all of them when k >= n.
  std::vector<int> sample_indices(int n, int k) {
    std::vector<int> pool(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
    if (k >= n) return pool;
    std::vector<int> out(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
      const std::uint64_t j = i + below(static_cast<std::uint64_t>(n - i));
      std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
      out[static_cast<std::size_t>(i)] = pool[static_cast<std::size_t>(i)];
    }
    return out;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace obliqforest
