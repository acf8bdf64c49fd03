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

#ifndef PROJECHO_TRIPARTITE_HPP
#define PROJECHO_TRIPARTITE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "projecho/models.hpp"
#include "projecho/qlinalg.hpp"
#include "projecho/rng.hpp"

namespace projecho {

enum class BCopy { B1, B2 };

/// Computational basis state of one B copy: bit k of `m` is the sigma_z
/// outcome of B qubit k (0 <-> +1, 1 <-> -1).
struct BasisLabel {
    std::uint64_t m = 0;
    bool operator==(const BasisLabel &) const = default;
};

/// Register [B1 | A | B2] with B1 in the least significant bits. Built from
/// the A u B bipartition it copies.
class TripartiteLayout {
   public:
    explicit TripartiteLayout(const Bipartition &bipartition);

    int n_a() const noexcept {
        return n_a_;
    }
    int n_b() const noexcept {
        return n_b_;
    }
    int num_qubits() const noexcept {
        return n_a_ + 2 * n_b_;
    }
    std::uint64_t dim() const noexcept {
        return std::uint64_t{1} << num_qubits();
    }
    std::uint64_t dim_a() const noexcept {
        return std::uint64_t{1} << n_a_;
    }
    std::uint64_t dim_b() const noexcept {
        return std::uint64_t{1} << n_b_;
    }
    const Bipartition &bipartition() const noexcept {
        return bipartition_;
    }

    /// Positions of the A qubits / one B copy in the tripartite register.
    std::vector<int> a_positions() const;
    std::vector<int> b_positions(BCopy copy) const;
    /// targets[q] = tripartite position of A u B qubit q when the B part is
    /// identified with `copy`.
    std::vector<int> embedding(BCopy copy) const;

    /// Register index of |b1>_{B1} |a>_A |b2>_{B2}.
    std::uint64_t index(std::uint64_t b1, std::uint64_t a, std::uint64_t b2) const noexcept {
        return b1 | (a << n_b_) | (b2 << (n_b_ + n_a_));
    }

   private:
    Bipartition bipartition_;
    int n_a_;
    int n_b_;
};

/// Lifts an A u B operator onto (A, copy); identity on the other B copy.
ComplexMatrix embed(const ComplexMatrix &u, BCopy copy, const TripartiteLayout &layout);

/// |psi0, b0> on the A u B register of `bipartition`.
StateVector product_state(const Bipartition &bipartition, const StateVector &psi0, const StateVector &b0);

/// |m1>_{B1} (x) |psi0>_A (x) |b0>_{B2}.
StateVector prepare_initial(const StateVector &psi0, const StateVector &b0, BasisLabel m1,
                            const TripartiteLayout &layout);

/// B1 in (|m> + e^{i alpha} |m'>)/sqrt(2); A in psi0; B2 in b0.
StateVector prepare_superposed_b1(BasisLabel m, BasisLabel m_prime, double alpha, const StateVector &psi0,
                                  const StateVector &b0, const TripartiteLayout &layout);

/// Generic tripartite state |b1_state>_{B1} |psi0>_A |b2_state>_{B2}.
StateVector tripartite_product(const StateVector &b1_state, const StateVector &psi0, const StateVector &b2_state,
                               const TripartiteLayout &layout);

struct Measurement {
    /// Bit k is the outcome on qubits[k] (1 <-> sigma_z = -1).
    std::uint64_t outcome;
    StateVector state;
};

/// Born probabilities of every outcome of a sigma_z measurement on `qubits`,
/// indexed with the same bit convention as Measurement::outcome.
std::vector<double> outcome_probabilities(const ComplexVector &amplitudes, std::span<const int> qubits);

/// Projective sigma_z measurement. Consumes one uniform draw from `rng`.
Measurement measure_z(const StateVector &state, std::span<const int> qubits, SeededRng &rng);

/// |<target|state>|^2.
double project_prob(const StateVector &state, const StateVector &target);

/// Inverse-CDF draw over a probability table (need not be exactly
/// normalized; the last nonzero entry absorbs rounding).
std::size_t sample_index(std::span<const double> probabilities, double u);

}  // namespace projecho

#endif
