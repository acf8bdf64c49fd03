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

#include "projecho/echo.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "echo_internal.hpp"
#include "parallel.hpp"
#include "projecho/error.hpp"

namespace projecho {

namespace {

constexpr double kVanishingEcho = 1e-12;

std::uint64_t require_basis(const StateVector &s, const char *what) {
    auto idx = s.basis_index();
    if (!idx) {
        throw_invalid(std::string(what) + " must be a computational basis state for shot sampling");
    }
    return *idx;
}

}  // namespace

EchoAmplitudeMatrix::EchoAmplitudeMatrix(double t, ComplexMatrix entries) : t_(t), entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) {
        throw_invalid("echo amplitude matrix must be square");
    }
}

Complex EchoAmplitudeMatrix::amplitude(BasisLabel m1, BasisLabel m2) const {
    if (m1.m >= static_cast<std::uint64_t>(dim_b()) || m2.m >= static_cast<std::uint64_t>(dim_b())) {
        throw_invalid("basis label outside subsystem B");
    }
    return entries_(static_cast<Eigen::Index>(m1.m), static_cast<Eigen::Index>(m2.m));
}

double EchoAmplitudeMatrix::projected_le(BasisLabel m1, BasisLabel m2) const {
    return std::norm(amplitude(m1, m2));
}

Eigen::MatrixXd EchoAmplitudeMatrix::projected_les() const {
    return entries_.cwiseAbs2();
}

double EchoAmplitudeMatrix::total() const {
    return entries_.cwiseAbs2().sum();
}

bool ShotCounts::satisfies_counting_identity() const {
    std::uint64_t successes = std::accumulate(n_success.begin(), n_success.end(), std::uint64_t{0});
    if (measured_b2()) {
        std::uint64_t pairs = std::accumulate(n_pair.begin(), n_pair.end(), std::uint64_t{0});
        if (pairs != successes) {
            return false;
        }
    }
    return n_not == dim_b * n_cycle - successes;
}

double ShotCounts::projected_le_estimate(std::uint64_t m1, std::uint64_t m2) const {
    if (!measured_b2()) {
        throw_invalid("projected echoes need B2 outcomes; this run skipped the B2 measurement");
    }
    return static_cast<double>(pair(m1, m2)) / static_cast<double>(n_cycle);
}

double classic_le(const Hamiltonian &h1, const Hamiltonian &h2, const StateVector &psi0, double t) {
    if (h1.dim() != h2.dim() || h1.dim() != psi0.dim()) {
        throw_invalid("classic Loschmidt echo dimension mismatch");
    }
    ComplexVector forward = h1.propagator(t) * psi0.amplitudes();
    ComplexVector back = h2.propagator(t).adjoint() * forward;
    return std::min(1.0, std::norm(psi0.amplitudes().dot(back)));
}

EchoAmplitudeMatrix echo_amplitudes(const Hamiltonian &h, const StateVector &psi0, const StateVector &b0, double t) {
    detail::EchoEvolver evolver(h, t);
    const auto &layout = evolver.layout();
    auto db = static_cast<Eigen::Index>(layout.dim_b());
    ComplexMatrix entries(db, db);
    for (Eigen::Index m1 = 0; m1 < db; ++m1) {
        StateVector input = prepare_initial(psi0, b0, BasisLabel{static_cast<std::uint64_t>(m1)}, layout);
        entries.row(m1) = evolver.project_b2(evolver.evolve(input.amplitudes()), psi0, b0).transpose();
    }
    return EchoAmplitudeMatrix(t, std::move(entries));
}

ShotCounts run_protocol_31(const Hamiltonian &h, const StateVector &psi0, const StateVector &b0, double t,
                           std::uint64_t n_cycle, const SeededRng &rng, const ProtocolOptions &options) {
    if (n_cycle == 0) {
        throw_invalid("n_cycle must be positive");
    }
    std::uint64_t a0 = require_basis(psi0, "psi0");
    std::uint64_t b0_label = require_basis(b0, "B0");
    detail::EchoEvolver evolver(h, t);
    const auto &layout = evolver.layout();
    const std::uint64_t db = layout.dim_b();
    const std::uint64_t da = layout.dim_a();
    const auto b1_pos = layout.b_positions(BCopy::B1);
    const int n_a = layout.n_a();
    const int n_b = layout.n_b();

    ShotCounts counts;
    counts.dim_b = db;
    counts.n_cycle = n_cycle;
    counts.seed = rng.seed();
    counts.n_success.assign(db, 0);
    if (options.measure_b2) {
        counts.n_pair.assign(db * db, 0);
    }

    for (std::uint64_t m1 = 0; m1 < db; ++m1) {
        StateVector input = prepare_initial(psi0, b0, BasisLabel{m1}, layout);
        ComplexVector final_state = evolver.evolve(input.amplitudes());

        // Outcome tables along the measurement sequence. Only the branch that
        // passes each check is ever continued, so the conditionals are needed
        // only on that branch; they are left unnormalized.
        std::vector<double> p_b1 = outcome_probabilities(final_state, b1_pos);
        std::vector<double> p_a(da, 0.0);
        std::vector<double> p_b2(db, 0.0);
        for (std::uint64_t a = 0; a < da; ++a) {
            for (std::uint64_t b2 = 0; b2 < db; ++b2) {
                double p = std::norm(final_state[static_cast<Eigen::Index>(layout.index(b0_label, a, b2))]);
                p_a[a] += p;
                if (a == a0) {
                    p_b2[b2] = p;
                }
            }
        }

        struct Tally {
            std::uint64_t n_not = 0;
            std::uint64_t success = 0;
            std::uint64_t measured = 0;
            std::vector<std::uint64_t> pair;
        };
        const SeededRng block = rng.derive(m1);
        std::vector<Tally> tallies(detail::kReductionChunks);
        detail::parallel_chunks(
            n_cycle, detail::kReductionChunks, options.threads, [&](std::size_t chunk, std::size_t lo, std::size_t hi) {
                Tally tally;
                tally.pair.assign(options.measure_b2 ? db : 0, 0);
                for (std::size_t round = lo; round < hi; ++round) {
                    SeededRng shot = block.derive(round);
                    // Step 3: B1.
                    std::uint64_t b1 = sample_index(p_b1, shot.uniform());
                    tally.measured += n_b;
                    if (b1 != b0_label) {
                        ++tally.n_not;
                        continue;
                    }
                    // Step 4: A, conditioned on the B1 result.
                    std::uint64_t a = sample_index(p_a, shot.uniform());
                    tally.measured += n_a;
                    if (a != a0) {
                        ++tally.n_not;
                        continue;
                    }
                    ++tally.success;
                    // Step 5: B2 labels the pair.
                    if (options.measure_b2) {
                        std::uint64_t m2 = sample_index(p_b2, shot.uniform());
                        tally.measured += n_b;
                        ++tally.pair[m2];
                    }
                }
                tallies[chunk] = std::move(tally);
            });
        for (const auto &tally : tallies) {
            counts.n_not += tally.n_not;
            counts.n_success[m1] += tally.success;
            counts.measured_qubits += tally.measured;
            for (std::size_t m2 = 0; m2 < tally.pair.size(); ++m2) {
                counts.n_pair[m1 * db + m2] += tally.pair[m2];
            }
        }
    }
    return counts;
}

double phase_from_echoes(double m, double m_prime, double m_alpha0, double m_alpha_half_pi) {
    if (m < kVanishingEcho || m_prime < kVanishingEcho) {
        throw_numerical("relative phase undefined: a projected echo vanishes (M=" + std::to_string(m) +
                        ", M'=" + std::to_string(m_prime) + ")");
    }
    double root = std::sqrt(m * m_prime);
    double offset = 0.5 * (std::sqrt(m / m_prime) + std::sqrt(m_prime / m));
    double cos_beta = m_alpha0 / root - offset;
    // cos(pi/2 + beta) = -sin(beta)
    double minus_sin_beta = m_alpha_half_pi / root - offset;
    double beta = std::atan2(-minus_sin_beta, cos_beta);
    if (beta < 0.0) {
        beta += 2.0 * std::numbers::pi;
    }
    return beta >= 2.0 * std::numbers::pi ? 0.0 : beta;
}

double projected_echo_probability(const Hamiltonian &h, const StateVector &input, const StateVector &psi0,
                                  const StateVector &b0, BasisLabel m2, double t) {
    detail::EchoEvolver evolver(h, t);
    if (static_cast<std::uint64_t>(input.dim()) != evolver.layout().dim()) {
        throw_invalid("echo input does not live on the tripartite register");
    }
    ComplexVector amps = evolver.project_b2(evolver.evolve(input.amplitudes()), psi0, b0);
    return std::norm(amps[static_cast<Eigen::Index>(m2.m)]);
}

double recover_phase(const Hamiltonian &h, const StateVector &psi0, const StateVector &b0, double t, BasisLabel m1,
                     BasisLabel m1_prime, BasisLabel m2) {
    EchoAmplitudeMatrix echo = echo_amplitudes(h, psi0, b0, t);
    double m = echo.projected_le(m1, m2);
    double mp = echo.projected_le(m1_prime, m2);
    if (m < kVanishingEcho || mp < kVanishingEcho) {
        throw_numerical("relative phase undefined at t=" + std::to_string(t) + ": a projected echo vanishes");
    }
    TripartiteLayout layout(h.bipartition());
    StateVector in0 = prepare_superposed_b1(m1, m1_prime, 0.0, psi0, b0, layout);
    StateVector in1 = prepare_superposed_b1(m1, m1_prime, std::numbers::pi / 2, psi0, b0, layout);
    double m_alpha0 = projected_echo_probability(h, in0, psi0, b0, m2, t);
    double m_alpha1 = projected_echo_probability(h, in1, psi0, b0, m2, t);
    return phase_from_echoes(m, mp, m_alpha0, m_alpha1);
}

}  // namespace projecho
