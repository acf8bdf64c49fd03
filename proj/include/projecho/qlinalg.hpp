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

#ifndef PROJECHO_QLINALG_HPP
#define PROJECHO_QLINALG_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "projecho/rng.hpp"

namespace projecho {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Largest register handled by the dense routines. Qubit 0 is the least
/// significant bit of every amplitude index.
inline constexpr int kMaxQubits = 14;
inline constexpr Eigen::Index kMaxDimension = Eigen::Index{1} << kMaxQubits;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kNormTol = 1e-10;
inline constexpr double kDensityTol = 1e-10;

/// Normalized pure state on `num_qubits` qubits.
class StateVector {
   public:
    /// Computational basis state |index>.
    static StateVector basis(int num_qubits, std::uint64_t index);
    /// Wraps `amplitudes` (length must be a power of two). With `normalize`
    /// the vector is rescaled; otherwise it must already have unit norm.
    static StateVector from_amplitudes(ComplexVector amplitudes, bool normalize = false);

    int num_qubits() const noexcept {
        return num_qubits_;
    }
    Eigen::Index dim() const noexcept {
        return amplitudes_.size();
    }
    const ComplexVector &amplitudes() const noexcept {
        return amplitudes_;
    }
    Complex operator[](Eigen::Index i) const {
        return amplitudes_[i];
    }
    /// Index k when the state is |k> up to a global phase.
    std::optional<std::uint64_t> basis_index(double tol = 1e-12) const;

   private:
    StateVector(int num_qubits, ComplexVector amplitudes);
    int num_qubits_;
    ComplexVector amplitudes_;
};

namespace pauli {
ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
/// sigma^+ = |0><1| with bit 0 the sigma_z = +1 state.
ComplexMatrix raise();
ComplexMatrix lower();
}  // namespace pauli

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix dagger(const ComplexMatrix &a);
Complex trace(const ComplexMatrix &a);
/// Tr(AB) without forming the product.
Complex trace_of_product(const ComplexMatrix &a, const ComplexMatrix &b);
/// |psi><psi|.
ComplexMatrix outer(const StateVector &psi);

double hermiticity_error(const ComplexMatrix &m);
bool is_hermitian(const ComplexMatrix &m, double tol = kHermitianTol);
/// max |U^dagger U - I|.
double unitarity_error(const ComplexMatrix &u);

/// Eigendecomposition of a Hermitian matrix, reused to build exactly unitary
/// propagators U(t) = V diag(exp(-i lambda t)) V^dagger for any t.
class Propagator {
   public:
    explicit Propagator(const ComplexMatrix &hermitian);
    ComplexMatrix at(double t) const;
    const RealVector &eigenvalues() const noexcept {
        return eigenvalues_;
    }
    const ComplexMatrix &eigenvectors() const noexcept {
        return eigenvectors_;
    }

   private:
    RealVector eigenvalues_;
    ComplexMatrix eigenvectors_;
};

ComplexMatrix expm_hermitian(const ComplexMatrix &h, double t);

/// Expands `op` (acting on `targets.size()` qubits, bit k of its index <->
/// register qubit targets[k]) to the whole `num_qubits` register.
ComplexMatrix embed_on_qubits(const ComplexMatrix &op, std::span<const int> targets, int num_qubits);

/// state <- op acting on `targets`, identity elsewhere. Same bit convention
/// as embed_on_qubits.
void apply_on_qubits(ComplexVector &state, const ComplexMatrix &op, std::span<const int> targets);
StateVector apply_on_qubits(const StateVector &state, const ComplexMatrix &op, std::span<const int> targets);
/// M <- (op on targets) * M, column by column.
void left_apply_on_qubits(ComplexMatrix &m, const ComplexMatrix &op, std::span<const int> targets);

/// Partial trace of an arbitrary operator. Kept qubits are relabeled in
/// ascending order of their register index.
ComplexMatrix partial_trace_operator(const ComplexMatrix &op, std::span<const int> keep, int num_qubits);

/// Throws unless `rho` is Hermitian, has unit trace and no eigenvalue below
/// -kDensityTol.
void validate_density(const ComplexMatrix &rho);

/// Reduced density matrix on `keep` for a validated density matrix.
ComplexMatrix partial_trace(const ComplexMatrix &rho, std::span<const int> keep, int num_qubits);

/// Eigenvalues of a density matrix, clamped at zero inside the PSD floor.
RealVector density_spectrum(const ComplexMatrix &rho);

/// Tr(rho^2).
double purity(const ComplexMatrix &rho);

/// Haar-random unitary: QR of a complex Ginibre matrix with the phases of
/// diag(R) folded back into Q.
ComplexMatrix haar_unitary(Eigen::Index dim, SeededRng rng);

/// Haar-random unit vector (one column of a Haar unitary).
ComplexVector haar_state(Eigen::Index dim, SeededRng &rng);

}  // namespace projecho

#endif
