// Copyright 2026 The accessq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ACCESSQ_RNG_H_
#define ACCESSQ_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace accessq {

using Rng = std::mt19937_64;

// 64-bit FNV-1a. Used for stream keys and provenance hashes because its
// output does not depend on the standard library implementation.
constexpr std::uint64_t Fnv1a64(std::string_view data,
                                std::uint64_t hash = 0xcbf29ce484222325ULL) {
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

inline std::uint64_t Fnv1a64Mix(std::uint64_t hash, std::uint64_t value) {
  for (int i = 0; i < 8; ++i) {
    hash ^= (value >> (8 * i)) & 0xffU;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

// Independent random stream for one (scenario seed, repetition, key) triple.
// Keys are flow ids or reserved names, so reordering flows never changes the
// draws a flow sees.
inline Rng DeriveStream(std::uint64_t seed, std::uint32_t repetition, std::string_view key) {
  const std::uint64_t key_hash = Fnv1a64(key);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    repetition, static_cast<std::uint32_t>(key_hash),
                    static_cast<std::uint32_t>(key_hash >> 32)};
  return Rng(seq);
}

}  // namespace accessq

#endif  // ACCESSQ_RNG_H_
