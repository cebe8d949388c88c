// SPDX-License-Identifier: Apache-2.0
//
// mmshare: spectrum sharing analysis for mmWave cellular networks
// Copyright (C) 2026 The mmshare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace mmshare::rng {

using Counter = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

/// Philox4x32-10 block function.
inline Counter philox4x32(Counter ctr, Key key) {
  constexpr std::uint32_t kM0 = 0xD2511F53u;
  constexpr std::uint32_t kM1 = 0xCD9E8D57u;
  constexpr std::uint32_t kW0 = 0x9E3779B9u;
  constexpr std::uint32_t kW1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kW0;
    key[1] += kW1;
  }
  return ctr;
}

inline Key key_from_seed(std::uint64_t seed) {
  return {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
}

/// Uniform on the open interval (0, 1) from 32 random bits.
inline double open01(std::uint32_t bits) { return (static_cast<double>(bits) + 0.5) * 0x1.0p-32; }

/// Uniform on (0, 1) with 52 bits of resolution.
inline double open01(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t m = (static_cast<std::uint64_t>(hi) << 20) | (lo >> 12);
  return (static_cast<double>(m) + 0.5) * 0x1.0p-52;
}

/// A substream: three fixed counter words name the stream, the fourth
/// counts blocks. Satisfies UniformRandomBitGenerator so it can feed the
/// standard distributions.
class Stream {
 public:
  using result_type = std::uint32_t;

  Stream(Key key, std::uint32_t w0, std::uint32_t w1, std::uint32_t w2)
      : key_(key), ctr_{w0, w1, w2, 0u} {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    if (pos_ == 4) {
      block_ = philox4x32(ctr_, key_);
      ++ctr_[3];
      pos_ = 0;
    }
    return block_[pos_++];
  }

  double uniform() {
    const std::uint32_t hi = (*this)();
    const std::uint32_t lo = (*this)();
    return open01(hi, lo);
  }

 private:
  Key key_;
  Counter ctr_;
  Counter block_{};
  int pos_ = 4;
};

}  // namespace mmshare::rng
