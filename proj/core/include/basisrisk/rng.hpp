// Copyright 2026 The basisrisk Authors
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

#ifndef BASISRISK_RNG_HPP_
#define BASISRISK_RNG_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace basisrisk {

// Philox4x32-10 counter-based generator. The key comes from the seed and
// the upper half of the counter from the stream id, so every (seed, stream)
// pair is an independent sequence that can be created in any order.
class Philox4x32 {
 public:
  using result_type = std::uint32_t;

  explicit Philox4x32(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

  result_type operator()() noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  // One block for an explicit counter, without touching the state.
  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> counter,
                                            std::array<std::uint32_t, 2> key) noexcept;

 private:
  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
};

// Combines two coordinates, e.g. (site, row), into one stream id.
std::uint64_t stream_id(std::uint64_t a, std::uint64_t b) noexcept;

// Variates built on Philox4x32. All algorithms are spelled out here so that
// outputs do not depend on the standard library's distribution code.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) noexcept : gen_(seed, stream) {}

  std::uint64_t next_u64() noexcept;
  // Uniform on the open interval (0, 1) with 53 random bits.
  double uniform() noexcept;
  // Unbiased integer in [0, n).
  std::uint64_t below(std::uint64_t n) noexcept;
  double normal() noexcept;
  double exponential() noexcept;
  double gamma(double shape) noexcept;
  double beta(double p, double q) noexcept;

 private:
  Philox4x32 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// n draws with replacement; throws DegenerateDataError on an empty source.
std::vector<double> bootstrap(std::span<const double> values, std::size_t n,
                              std::uint64_t seed);

}  // namespace basisrisk

#endif  // BASISRISK_RNG_HPP_
