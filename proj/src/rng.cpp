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

#include "gpical/rng.hpp"

#include <cmath>

#include "gpical/types.hpp"

namespace gpical {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t make_key(std::uint64_t seed, std::uint64_t purpose,
                       std::uint64_t index, std::uint64_t subindex) {
  std::uint64_t h = mix64(seed + kGolden);
  h = mix64(h ^ (purpose * 0xD6E8FEB86659FD93ULL));
  h = mix64(h ^ (index + 0x8CB92BA72F3D8DD7ULL));
  h = mix64(h ^ (subindex * kGolden + 0x3C79AC492BA7B653ULL));
  return h;
}

}  // namespace

Stream::Stream(std::uint64_t seed, Purpose purpose, std::uint64_t index,
               std::uint64_t subindex)
    : state_(make_key(seed, static_cast<std::uint64_t>(purpose), index,
                      subindex)) {}

std::uint64_t Stream::next() {
  state_ += kGolden;
  return mix64(state_);
}

double Stream::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Stream::uniform(double lo, double hi) {
  if (lo == hi) return lo;
  const double u = lo + (hi - lo) * uniform();
  return u > hi ? hi : u;
}

double Stream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // 1 - uniform() lies in (0, 1], so the log is finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * kPi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::uint64_t derive_seed(std::uint64_t seed, Purpose purpose,
                          std::uint64_t index) {
  return make_key(seed, static_cast<std::uint64_t>(purpose), index,
                  0xA5A5A5A5A5A5A5A5ULL);
}

}  // namespace gpical
