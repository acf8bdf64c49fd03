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

#include "projecho/tripartite.hpp"

#include <cmath>
#include <string>

#include "projecho/error.hpp"

namespace projecho {

TripartiteLayout::TripartiteLayout(const Bipartition &bipartition)
    : bipartition_(bipartition), n_a_(bipartition.n_a()), n_b_(bipartition.n_b()) {
    if (num_qubits() > kMaxQubits) {
        throw_invalid("tripartite register of " + std::to_string(num_qubits()) +
                      " qubits exceeds the configured maximum of " + std::to_string(kMaxQubits));
    }
}

std::vector<int> TripartiteLayout::a_positions() const {
    std::vector<int> out(n_a_);
    for (int i = 0; i < n_a_; ++i) {
        out[i] = n_b_ + i;
    }
    return out;
}

std::vector<int> TripartiteLayout::b_positions(BCopy copy) const {
    int base = copy == BCopy::B1 ? 0 : n_b_ + n_a_;
    std::vector<int> out(n_b_);
    for (int k = 0; k < n_b_; ++k) {
        out[k] = base + k;
    }
    return out;
}

std::vector<int> TripartiteLayout::embedding(BCopy copy) const {
    std::vector<int> targets(bipartition_.num_qubits());
    auto a = a_positions();
    auto b = b_positions(copy);
    const auto &aq = bipartition_.a_qubits();
    const auto &bq = bipartition_.b_qubits();
    for (std::size_t i = 0; i < aq.size(); ++i) {
        targets[aq[i]] = a[i];
    }
    for (std::size_t k = 0; k < bq.size(); ++k) {
        targets[bq[k]] = b[k];
    }
    return targets;
}

ComplexMatrix embed(const ComplexMatrix &u, BCopy copy, const TripartiteLayout &layout) {
    Eigen::Index expected = Eigen::Index{1} << layout.bipartition().num_qubits();
    if (u.rows() != expected || u.cols() != expected) {
        throw_invalid("embedded operator must act on the A u B register");
    }
    return embed_on_qubits(u, layout.embedding(copy), layout.num_qubits());
}

namespace {

void check_sizes(const StateVector &psi0, const StateVector &b0, const Bipartition &bip) {
    if (psi0.num_qubits() != bip.n_a()) {
        throw_invalid("psi0 has " + std::to_string(psi0.num_qubits()) + " qubits, subsystem A has " +
                      std::to_string(bip.n_a()));
    }
    if (b0.num_qubits() != bip.n_b()) {
        throw_invalid("B0 has " + std::to_string(b0.num_qubits()) + " qubits, subsystem B has " +
                      std::to_string(bip.n_b()));
    }
}

}  // namespace

StateVector product_state(const Bipartition &bipartition, const StateVector &psi0, const StateVector &b0) {
    check_sizes(psi0, b0, bipartition);
    const auto &aq = bipartition.a_qubits();
    const auto &bq = bipartition.b_qubits();
    ComplexVector amps = ComplexVector::Zero(Eigen::Index{1} << bipartition.num_qubits());
    for (Eigen::Index a = 0; a < psi0.dim(); ++a) {
        if (psi0[a] == 0.0) {
            continue;
        }
        Eigen::Index ia = 0;
        for (std::size_t i = 0; i < aq.size(); ++i) {
            if (a & (Eigen::Index{1} << i)) {
                ia |= Eigen::Index{1} << aq[i];
            }
        }
        for (Eigen::Index b = 0; b < b0.dim(); ++b) {
            Eigen::Index ib = 0;
            for (std::size_t k = 0; k < bq.size(); ++k) {
                if (b & (Eigen::Index{1} << k)) {
                    ib |= Eigen::Index{1} << bq[k];
                }
            }
            amps[ia | ib] = psi0[a] * b0[b];
        }
    }
    return StateVector::from_amplitudes(std::move(amps), true);
}

StateVector tripartite_product(const StateVector &b1_state, const StateVector &psi0, const StateVector &b2_state,
                               const TripartiteLayout &layout) {
    if (b1_state.num_qubits() != layout.n_b() || b2_state.num_qubits() != layout.n_b() ||
        psi0.num_qubits() != layout.n_a()) {
        throw_invalid("tripartite factor sizes do not match the layout");
    }
    ComplexVector amps(static_cast<Eigen::Index>(layout.dim()));
    for (Eigen::Index b2 = 0; b2 < b2_state.dim(); ++b2) {
        for (Eigen::Index a = 0; a < psi0.dim(); ++a) {
            Complex outer_amp = b2_state[b2] * psi0[a];
            for (Eigen::Index b1 = 0; b1 < b1_state.dim(); ++b1) {
                amps[static_cast<Eigen::Index>(layout.index(b1, a, b2))] = outer_amp * b1_state[b1];
            }
        }
    }
    return StateVector::from_amplitudes(std::move(amps), true);
}

StateVector prepare_initial(const StateVector &psi0, const StateVector &b0, BasisLabel m1,
                            const TripartiteLayout &layout) {
    check_sizes(psi0, b0, layout.bipartition());
    return tripartite_product(StateVector::basis(layout.n_b(), m1.m), psi0, b0, layout);
}

StateVector prepare_superposed_b1(BasisLabel m, BasisLabel m_prime, double alpha, const StateVector &psi0,
                                  const StateVector &b0, const TripartiteLayout &layout) {
    check_sizes(psi0, b0, layout.bipartition());
    if (m == m_prime) {
        throw_invalid("superposed B1 preparation needs two distinct labels");
    }
    if (m.m >= layout.dim_b() || m_prime.m >= layout.dim_b()) {
        throw_invalid("basis label outside subsystem B");
    }
    ComplexVector b1 = ComplexVector::Zero(static_cast<Eigen::Index>(layout.dim_b()));
    b1[static_cast<Eigen::Index>(m.m)] = 1.0 / std::sqrt(2.0);
    b1[static_cast<Eigen::Index>(m_prime.m)] = std::polar(1.0 / std::sqrt(2.0), alpha);
    return tripartite_product(StateVector::from_amplitudes(std::move(b1), true), psi0, b0, layout);
}

std::vector<double> outcome_probabilities(const ComplexVector &amplitudes, std::span<const int> qubits) {
    std::vector<double> probs(std::size_t{1} << qubits.size(), 0.0);
    for (Eigen::Index i = 0; i < amplitudes.size(); ++i) {
        double p = std::norm(amplitudes[i]);
        if (p == 0.0) {
            continue;
        }
        std::size_t outcome = 0;
        for (std::size_t k = 0; k < qubits.size(); ++k) {
            if (i & (Eigen::Index{1} << qubits[k])) {
                outcome |= std::size_t{1} << k;
            }
        }
        probs[outcome] += p;
    }
    return probs;
}

std::size_t sample_index(std::span<const double> probabilities, double u) {
    double total = 0.0;
    std::size_t last_nonzero = 0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        total += probabilities[i];
        if (probabilities[i] > 0.0) {
            last_nonzero = i;
        }
    }
    if (!(total > 0.0)) {
        throw_numerical("cannot sample from an all-zero distribution");
    }
    double target = u * total;
    double cum = 0.0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        cum += probabilities[i];
        if (target < cum && probabilities[i] > 0.0) {
            return i;
        }
    }
    return last_nonzero;
}

Measurement measure_z(const StateVector &state, std::span<const int> qubits, SeededRng &rng) {
    for (int q : qubits) {
        if (q < 0 || q >= state.num_qubits()) {
            throw_invalid("measured qubit " + std::to_string(q) + " outside register");
        }
    }
    std::vector<double> probs = outcome_probabilities(state.amplitudes(), qubits);
    std::size_t outcome = sample_index(probs, rng.uniform());
    double p = probs[outcome];
    if (!(p > 0.0)) {
        throw_numerical("measurement collapsed onto a zero-norm branch");
    }
    ComplexVector amps = state.amplitudes();
    double inv = 1.0 / std::sqrt(p);
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
        std::size_t o = 0;
        for (std::size_t k = 0; k < qubits.size(); ++k) {
            if (i & (Eigen::Index{1} << qubits[k])) {
                o |= std::size_t{1} << k;
            }
        }
        amps[i] = o == outcome ? amps[i] * inv : Complex(0.0);
    }
    return {outcome, StateVector::from_amplitudes(std::move(amps), true)};
}

double project_prob(const StateVector &state, const StateVector &target) {
    if (state.dim() != target.dim()) {
        throw_invalid("project_prob dimension mismatch");
    }
    return std::min(1.0, std::norm(target.amplitudes().dot(state.amplitudes())));
}

}  // namespace projecho
