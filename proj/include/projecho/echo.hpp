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

#ifndef PROJECHO_ECHO_HPP
#define PROJECHO_ECHO_HPP

#include <cstdint>
#include <vector>

#include "projecho/models.hpp"
#include "projecho/qlinalg.hpp"
#include "projecho/rng.hpp"
#include "projecho/tripartite.hpp"

namespace projecho {

/// D_B x D_B matrix of projected-echo amplitudes
/// T[m1][m2] = <B0, psi0, m2| U_{A,B1}^dagger(t) U_{A,B2}(t) |m1, psi0, B0>
/// (kets written in [B1 | A | B2] order). |T[m1][m2]|^2 is the projected
/// Loschmidt echo M(t, m1, m2).
class EchoAmplitudeMatrix {
   public:
    EchoAmplitudeMatrix(double t, ComplexMatrix entries);

    double t() const noexcept {
        return t_;
    }
    const ComplexMatrix &entries() const noexcept {
        return entries_;
    }
    Eigen::Index dim_b() const noexcept {
        return entries_.rows();
    }
    Complex amplitude(BasisLabel m1, BasisLabel m2) const;
    double projected_le(BasisLabel m1, BasisLabel m2) const;
    /// Entrywise |T|^2.
    Eigen::MatrixXd projected_les() const;
    /// sum_{m1,m2} M(t, m1, m2), the purity of A.
    double total() const;

   private:
    double t_;
    ComplexMatrix entries_;
};

/// Shot tallies of the projected-echo protocol for one time point.
struct ShotCounts {
    std::uint64_t dim_b = 0;
    std::uint64_t n_cycle = 0;
    /// Rounds that failed the B1 or A check.
    std::uint64_t n_not = 0;
    /// Successful rounds per prepared m1.
    std::vector<std::uint64_t> n_success;
    /// Row-major D_B x D_B success counts keyed by (m1, m2). Empty when B2 was
    /// not measured.
    std::vector<std::uint64_t> n_pair;
    /// Total single-qubit sigma_z measurements performed.
    std::uint64_t measured_qubits = 0;
    std::uint64_t seed = 0;

    bool measured_b2() const noexcept {
        return !n_pair.empty();
    }
    std::uint64_t pair(std::uint64_t m1, std::uint64_t m2) const {
        return n_pair.at(m1 * dim_b + m2);
    }
    /// n_not == D_B * n_cycle - sum of successes.
    bool satisfies_counting_identity() const;
    /// N_(m1,m2) / n_cycle.
    double projected_le_estimate(std::uint64_t m1, std::uint64_t m2) const;
};

struct ProtocolOptions {
    /// When false the B2 measurement is skipped; only n_not is informative.
    bool measure_b2 = true;
    int threads = 1;
};

/// |<psi0| e^{i H2 t} e^{-i H1 t} |psi0>|^2 on the A u B register.
double classic_le(const Hamiltonian &h1, const Hamiltonian &h2, const StateVector &psi0, double t);

/// Evolves every |m1, psi0, B0> through U_{A,B2}(t) then U_{A,B1}^dagger(t)
/// and projects onto each |B0, psi0, m2>.
EchoAmplitudeMatrix echo_amplitudes(const Hamiltonian &h, const StateVector &psi0, const StateVector &b0, double t);

/// Shot-level simulation of the projected-echo protocol: for each m1,
/// `n_cycle` rounds of prepare, evolve forward on (A, B2), backward on
/// (A, B1), then measure B1, A and B2 in that order, aborting at the first
/// mismatch. psi0 and b0 must be computational basis states. Every round
/// draws from its own stream rng.derive(m1).derive(round).
ShotCounts run_protocol_31(const Hamiltonian &h, const StateVector &psi0, const StateVector &b0, double t,
                           std::uint64_t n_cycle, const SeededRng &rng, const ProtocolOptions &options = {});

/// Phase beta defined by T[m1][m2] / T[m1'][m2] = e^{-i beta} |ratio|, from
/// the echoes M = M(m1,m2), M' = M(m1',m2) and the superposed-input echoes at
/// alpha = 0 and alpha = pi/2. Result in [0, 2 pi).
double phase_from_echoes(double m, double m_prime, double m_alpha0, double m_alpha_half_pi);

/// Recovers beta for (m1, m1', m2) from exact echo probabilities, including
/// the two superposed-B1 echoes.
double recover_phase(const Hamiltonian &h, const StateVector &psi0, const StateVector &b0, double t, BasisLabel m1,
                     BasisLabel m1_prime, BasisLabel m2);

/// Echo probability |<B0, psi0, m2| U_{A,B1}^dagger U_{A,B2} |input>|^2 for an
/// arbitrary tripartite input state.
double projected_echo_probability(const Hamiltonian &h, const StateVector &input, const StateVector &psi0,
                                  const StateVector &b0, BasisLabel m2, double t);

}  // namespace projecho

#endif
