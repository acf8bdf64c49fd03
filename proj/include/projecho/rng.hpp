// Copyright 2026 The projecho Authors
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

#ifndef PROJECHO_RNG_HPP
#define PROJECHO_RNG_HPP

#include <complex>
#include <cstdint>
#include <limits>

namespace projecho {

/// Counter-style random stream keyed by (seed, stream id).
///
/// A `SeededRng` is a small value type: copying it forks an identical
/// sequence, and `derive(k)` gives an independent child stream. Parallel
/// consumers never share a generator; each work item derives its own stream
/// from a deterministic index so results do not depend on scheduling.
///
/// The generator core is SplitMix64. Normal deviates use Box-Muller so draws
/// are reproducible across standard library implementations.
class SeededRng {
   public:
    using result_type = std::uint64_t;

    explicit SeededRng(std::uint64_t seed, std::uint64_t stream = 0);

    /// Child stream. Distinct `sub` values give statistically independent streams.
    SeededRng derive(std::uint64_t sub) const;

    std::uint64_t seed() const noexcept {
        return seed_;
    }
    std::uint64_t stream() const noexcept {
        return stream_;
    }

    result_type operator()() noexcept;
    static constexpr result_type min() noexcept {
        return 0;
    }
    static constexpr result_type max() noexcept {
        return std::numeric_limits<result_type>::max();
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept;
    /// Standard normal deviate.
    double normal() noexcept;
    /// Circularly symmetric complex Gaussian with E|z|^2 = 1.
    std::complex<double> complex_normal() noexcept;

   private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t state_;
};

/// SplitMix64 finalizer; also used for hashing seeds into stream keys.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace projecho

#endif
