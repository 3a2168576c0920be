// Copyright 2026 The lowadapt Authors.
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

// Counter-based random streams.
//
// Every random decision in the library draws from an Rng obtained by
// deriving a stream from (seed, purpose, indices). The i-th output of a
// stream is a pure function of its key and i, so parallel branches that
// derive their own streams produce the same numbers regardless of
// scheduling or worker count.

#ifndef LOWADAPT_RNG_H_
#define LOWADAPT_RNG_H_

#include <cstdint>
#include <limits>

namespace lowadapt {

// Purposes used to key derived streams.
enum class Stream : std::uint64_t {
  kInstance = 1,
  kCosts = 2,
  kAlgorithm = 3,
  kTrial = 4,
  kSample = 5,
  kSmallElements = 6,
  kCell = 7,
  kBaseline = 8,
  kProbe = 9,
};

class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : key_(Mix(seed ^ 0x6a09e667f3bcc908ULL)) {}

  // A statistically independent child stream.
  Rng Derive(Stream purpose, std::uint64_t a = 0, std::uint64_t b = 0) const;

  std::uint64_t operator()() { return Next(); }
  std::uint64_t Next() { return Mix(key_ + kGamma * ++counter_); }

  // Uniform on [0, 1) with 53 random bits.
  double Uniform01() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }

  // Uniform on [0, bound). bound must be positive.
  std::uint64_t UniformInt(std::uint64_t bound);

  bool Bernoulli(double p) { return Uniform01() < p; }

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() {
    return std::numeric_limits<std::uint64_t>::max();
  }

  // SplitMix64 finalizer.
  static std::uint64_t Mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  Rng(std::uint64_t key, bool) : key_(key) {}

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace lowadapt

#endif  // LOWADAPT_RNG_H_
