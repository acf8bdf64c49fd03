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

#ifndef PROJECHO_OTOC_HPP
#define PROJECHO_OTOC_HPP

#include <cstdint>
#include <optional>

#include "projecho/models.hpp"
#include "projecho/qlinalg.hpp"
#include "projecho/rng.hpp"

namespace projecho {

/// F(t) = Tr[R_B^dagger(t) W^dagger R_B(t) W] with R_B(t) = U^dagger(t) R_B U(t).
/// No 1/D normalization. `r_b` acts on the B qubits with bit k of its index
/// on b_qubits()[k].
Complex otoc(const Hamiltonian &h, const ComplexMatrix &r_b, const ComplexMatrix &w, double t);

/// (1/D_B) Tr_B(O) (x) I_B, the Haar average of R_B^dagger O R_B.
ComplexMatrix haar_twirl_exact(const ComplexMatrix &o, const Bipartition &bipartition);

/// sqrt(D_B) |psi0, B0><psi0, B0|.
ComplexMatrix otoc_weight(const StateVector &psi0, const StateVector &b0, const Bipartition &bipartition);

/// One Monte Carlo draw: R_B is haar_unitary(D_B, rng.derive(r_stream)).
struct OtocSample {
    double t = 0.0;
    Complex value;
    std::uint64_t r_stream = 0;
};

enum class TwirlMode { Exact, MonteCarlo };

struct OtocAverageOptions {
    TwirlMode mode = TwirlMode::Exact;
    std::uint64_t n_samples = 1000;
    int threads = 1;
};

struct AveragedOtoc {
    double value = 0.0;
    /// Imaginary part of the average; zero up to rounding in exact mode.
    double imag = 0.0;
    std::optional<double> stderr_value;
    std::uint64_t n_samples = 0;
};

OtocSample sample_otoc(const Hamiltonian &h, const ComplexMatrix &w, double t, const SeededRng &rng,
                       std::uint64_t r_stream);

/// Haar average of F over R_B. For W = sqrt(D_B) rho(0) with rho(0) a pure
/// product state the exact value is Tr rho_A(t)^2. Exact mode rejects any
/// other W.
AveragedOtoc averaged_otoc(const Hamiltonian &h, const ComplexMatrix &w, double t, const OtocAverageOptions &options,
                           const SeededRng &rng);

struct OtocLeReport {
    double t = 0.0;
    /// Exact-twirl averaged OTOC.
    double lhs = 0.0;
    /// Sum of all projected Loschmidt echoes.
    double rhs = 0.0;
    double discrepancy = 0.0;
};

OtocLeReport verify_otoc_le(const Hamiltonian &h, const StateVector &psi0, const StateVector &b0, double t);

}  // namespace projecho

#endif
