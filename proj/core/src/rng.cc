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

#include "lowadapt/rng.h"

namespace lowadapt {
namespace {
__extension__ using U128 = unsigned __int128;
}  // namespace

Rng Rng::Derive(Stream purpose, std::uint64_t a, std::uint64_t b) const {
  std::uint64_t k = Mix(key_ ^ Mix(static_cast<std::uint64_t>(purpose) +
                                   0x3c6ef372fe94f82bULL));
  k = Mix(k ^ Mix(a + 0xa54ff53a5f1d36f1ULL));
  k = Mix(k ^ Mix(b + 0x510e527fade682d1ULL));
  return Rng(k, true);
}

std::uint64_t Rng::UniformInt(std::uint64_t bound) {
  // Lemire's multiply-shift with rejection; exact and platform independent.
  U128 m = static_cast<U128>(Next()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<U128>(Next()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace lowadapt
