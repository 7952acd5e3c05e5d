// Copyright 2026 The gpical Authors
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

#ifndef GPICAL_RNG_HPP_
#define GPICAL_RNG_HPP_

#include <cstdint>
#include <limits>

namespace gpical {

// What a stream is used for. Streams with different purposes never share
// state even when seed and indices coincide.
enum class Purpose : std::uint64_t {
  kGainPhase = 1,
  kTrainBatch = 2,
  kEvalNull = 3,      // H0 evaluation trials
  kEvalTarget = 4,    // H1 evaluation trials
  kMapDemo = 5,
  kRealization = 6,   // per-GPI-realization seed derivation
};

// Counter-based random stream. The state is a 64-bit key derived by
// hashing (seed, purpose, index, subindex); the k-th output is the
// SplitMix64 finalizer applied to key + k * golden. Two streams with the
// same key produce identical sequences regardless of which thread or in
// which order they are created.
class Stream {
 public:
  using result_type = std::uint64_t;

  Stream(std::uint64_t seed, Purpose purpose, std::uint64_t index = 0,
         std::uint64_t subindex = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() { return next(); }
  std::uint64_t next();

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on [lo, hi]; returns lo when lo == hi.
  double uniform(double lo, double hi);
  // Standard normal (Box-Muller).
  double normal();

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Derives a child seed, e.g. the base seed of one GPI realization.
std::uint64_t derive_seed(std::uint64_t seed, Purpose purpose,
                          std::uint64_t index);

}  // namespace gpical

#endif  // GPICAL_RNG_HPP_
