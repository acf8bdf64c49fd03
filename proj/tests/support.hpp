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

#ifndef PROJECHO_TESTS_SUPPORT_HPP
#define PROJECHO_TESTS_SUPPORT_HPP

#include <cmath>
#include <cstdint>

#include "projecho/models.hpp"
#include "projecho/qlinalg.hpp"
#include "projecho/rng.hpp"

namespace projecho::testing {

inline ComplexMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, SeededRng &rng) {
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            m(i, j) = rng.complex_normal();
        }
    }
    return m;
}

inline ComplexMatrix random_hermitian(Eigen::Index dim, SeededRng &rng) {
    ComplexMatrix m = random_matrix(dim, dim, rng);
    return (m + m.adjoint()) / 2.0;
}

inline StateVector random_state(int num_qubits, SeededRng &rng) {
    return StateVector::from_amplitudes(random_matrix(Eigen::Index{1} << num_qubits, 1, rng).col(0), true);
}

inline double max_abs(const ComplexMatrix &m) {
    return m.cwiseAbs().maxCoeff();
}

/// Two A qubits, one B qubit, j = 1, h = 1.05.
inline Hamiltonian four_qubit_tfim() {
    Bipartition bip(2, 1);
    return build_tfim(3, 1.0, 1.05, bip);
}

}  // namespace projecho::testing

#endif
