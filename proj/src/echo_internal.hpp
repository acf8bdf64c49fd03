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

#ifndef PROJECHO_SRC_ECHO_INTERNAL_HPP
#define PROJECHO_SRC_ECHO_INTERNAL_HPP

#include "projecho/models.hpp"
#include "projecho/tripartite.hpp"

namespace projecho::detail {

/// Forward U_{A,B2}(t) followed by backward U_{A,B1}^dagger(t) on the
/// tripartite register.
class EchoEvolver {
   public:
    EchoEvolver(const Hamiltonian &h, double t)
        : layout_(h.bipartition()),
          forward_(h.propagator(t)),
          backward_(forward_.adjoint()),
          b2_targets_(layout_.embedding(BCopy::B2)),
          b1_targets_(layout_.embedding(BCopy::B1)) {
    }

    const TripartiteLayout &layout() const noexcept {
        return layout_;
    }

    ComplexVector evolve(ComplexVector state) const {
        apply_on_qubits(state, forward_, b2_targets_);
        apply_on_qubits(state, backward_, b1_targets_);
        return state;
    }

    /// <B0, psi0, m2 | state> for every m2.
    ComplexVector project_b2(const ComplexVector &state, const StateVector &psi0, const StateVector &b0) const {
        std::uint64_t db = layout_.dim_b();
        ComplexVector out = ComplexVector::Zero(static_cast<Eigen::Index>(db));
        for (std::uint64_t m2 = 0; m2 < db; ++m2) {
            Complex acc = 0.0;
            for (Eigen::Index a = 0; a < psi0.dim(); ++a) {
                if (psi0[a] == 0.0) {
                    continue;
                }
                for (Eigen::Index b1 = 0; b1 < b0.dim(); ++b1) {
                    Complex ref = psi0[a] * b0[b1];
                    if (ref != 0.0) {
                        acc += std::conj(ref) * state[static_cast<Eigen::Index>(layout_.index(b1, a, m2))];
                    }
                }
            }
            out[static_cast<Eigen::Index>(m2)] = acc;
        }
        return out;
    }

   private:
    TripartiteLayout layout_;
    ComplexMatrix forward_;
    ComplexMatrix backward_;
    std::vector<int> b2_targets_;
    std::vector<int> b1_targets_;
};

}  // namespace projecho::detail

#endif
