// Copyright 2026 The logshift Authors.
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

#ifndef LOGSHIFT_RNG_HPP_
#define LOGSHIFT_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <limits>

namespace logshift {

/// Counter-based random stream. Output i of a stream with key K is
/// mix(K ^ mix(i)), where mix is the SplitMix64 finalizer, so any draw can be
/// recomputed from (key, counter) alone. split(j) derives an independent child
/// key, giving a tree of reproducible substreams from one 64-bit seed.
///
/// A stream is single-owner: copy it or split it for use on another thread.
/// Satisfies std::uniform_random_bit_generator.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed = 0) : key_(mix(seed ^ kSeedSalt)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() { return mix(key_ ^ mix(counter_++)); }

  /// Child stream number `index`; does not advance this stream.
  [[nodiscard]] RngStream split(std::uint64_t index) const {
    RngStream child;
    child.key_ = mix(key_ + kGolden * (index + 1)) ^ kSplitSalt;
    child.key_ = mix(child.key_);
    return child;
  }

  /// Uniform on the open interval (0, 1).
  double uniform() {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard exponential by inversion.
  double exponential() { return -std::log(uniform()); }

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  static constexpr std::uint64_t kSeedSalt = 0x6a09e667f3bcc909ULL;
  static constexpr std::uint64_t kSplitSalt = 0xbb67ae8584caa73bULL;

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z += kGolden;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace logshift

#endif  // LOGSHIFT_RNG_HPP_
