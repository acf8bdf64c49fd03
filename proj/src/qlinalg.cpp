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

#include "projecho/qlinalg.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "projecho/error.hpp"

namespace projecho {

namespace {

bool is_power_of_two(Eigen::Index n) {
    return n > 0 && std::has_single_bit(static_cast<std::uint64_t>(n));
}

int log2_exact(Eigen::Index n) {
    return std::countr_zero(static_cast<std::uint64_t>(n));
}

void check_targets(std::span<const int> targets, int num_qubits) {
    std::uint64_t seen = 0;
    for (int q : targets) {
        if (q < 0 || q >= num_qubits) {
            throw_invalid("qubit index " + std::to_string(q) + " outside register of " + std::to_string(num_qubits));
        }
        if (seen & (std::uint64_t{1} << q)) {
            throw_invalid("duplicate qubit index " + std::to_string(q));
        }
        seen |= std::uint64_t{1} << q;
    }
}

// offsets[s] = register index whose target bits encode s and all others are 0.
std::vector<Eigen::Index> spread_table(std::span<const int> qubits) {
    std::vector<Eigen::Index> table(std::size_t{1} << qubits.size(), 0);
    for (std::size_t s = 0; s < table.size(); ++s) {
        Eigen::Index v = 0;
        for (std::size_t k = 0; k < qubits.size(); ++k) {
            if (s & (std::size_t{1} << k)) {
                v |= Eigen::Index{1} << qubits[k];
            }
        }
        table[s] = v;
    }
    return table;
}

std::vector<int> complement(std::span<const int> qubits, int num_qubits) {
    std::vector<int> rest;
    for (int q = 0; q < num_qubits; ++q) {
        if (std::find(qubits.begin(), qubits.end(), q) == qubits.end()) {
            rest.push_back(q);
        }
    }
    return rest;
}

}  // namespace

StateVector::StateVector(int num_qubits, ComplexVector amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
}

StateVector StateVector::basis(int num_qubits, std::uint64_t index) {
    if (num_qubits < 0 || num_qubits > kMaxQubits) {
        throw_invalid("state of " + std::to_string(num_qubits) + " qubits exceeds the configured maximum");
    }
    Eigen::Index dim = Eigen::Index{1} << num_qubits;
    if (index >= static_cast<std::uint64_t>(dim)) {
        throw_invalid("basis index " + std::to_string(index) + " outside dimension " + std::to_string(dim));
    }
    ComplexVector amps = ComplexVector::Zero(dim);
    amps[static_cast<Eigen::Index>(index)] = 1.0;
    return StateVector(num_qubits, std::move(amps));
}

StateVector StateVector::from_amplitudes(ComplexVector amplitudes, bool normalize) {
    if (!is_power_of_two(amplitudes.size()) || amplitudes.size() > kMaxDimension) {
        throw_invalid("amplitude vector length " + std::to_string(amplitudes.size()) + " is not a supported power of two");
    }
    double norm = amplitudes.norm();
    if (normalize) {
        if (norm == 0.0) {
            throw_numerical("cannot normalize a zero vector");
        }
        amplitudes /= norm;
    } else if (std::abs(norm - 1.0) > kNormTol) {
        throw_invalid("state norm " + std::to_string(norm) + " differs from 1");
    }
    int n = log2_exact(amplitudes.size());
    return StateVector(n, std::move(amplitudes));
}

std::optional<std::uint64_t> StateVector::basis_index(double tol) const {
    Eigen::Index best;
    double peak = amplitudes_.cwiseAbs().maxCoeff(&best);
    if (std::abs(peak - 1.0) > tol) {
        return std::nullopt;
    }
    return static_cast<std::uint64_t>(best);
}

namespace pauli {
ComplexMatrix identity() {
    return ComplexMatrix::Identity(2, 2);
}
ComplexMatrix x() {
    ComplexMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}
ComplexMatrix y() {
    ComplexMatrix m(2, 2);
    m << 0.0, Complex(0, -1), Complex(0, 1), 0.0;
    return m;
}
ComplexMatrix z() {
    ComplexMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}
ComplexMatrix raise() {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    return m;
}
ComplexMatrix lower() {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(1, 0) = 1.0;
    return m;
}
}  // namespace pauli

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() * b.rows() > kMaxDimension || a.cols() * b.cols() > kMaxDimension) {
        throw_invalid("tensor product dimension exceeds the configured maximum of " + std::to_string(kMaxDimension));
    }
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        throw_invalid("matmul shape mismatch");
    }
    return a * b;
}

ComplexMatrix dagger(const ComplexMatrix &a) {
    return a.adjoint();
}

Complex trace(const ComplexMatrix &a) {
    if (a.rows() != a.cols()) {
        throw_invalid("trace of a non-square matrix");
    }
    return a.trace();
}

Complex trace_of_product(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows() || a.rows() != b.cols()) {
        throw_invalid("trace_of_product shape mismatch");
    }
    // Tr(AB) = sum_ij A_ij B_ji
    return a.cwiseProduct(b.transpose()).sum();
}

ComplexMatrix outer(const StateVector &psi) {
    return psi.amplitudes() * psi.amplitudes().adjoint();
}

double hermiticity_error(const ComplexMatrix &m) {
    if (m.rows() != m.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    if (m.size() == 0) {
        return 0.0;
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix &m, double tol) {
    return hermiticity_error(m) <= tol;
}

double unitarity_error(const ComplexMatrix &u) {
    if (u.rows() != u.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

Propagator::Propagator(const ComplexMatrix &hermitian) {
    double scale = std::max(1.0, hermitian.size() ? hermitian.cwiseAbs().maxCoeff() : 0.0);
    if (!is_hermitian(hermitian, kHermitianTol * scale)) {
        throw_invalid("propagator requested for a non-Hermitian matrix");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian);
    if (solver.info() != Eigen::Success) {
        throw_numerical("Hermitian eigendecomposition failed");
    }
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
}

ComplexMatrix Propagator::at(double t) const {
    ComplexVector phases(eigenvalues_.size());
    for (Eigen::Index k = 0; k < eigenvalues_.size(); ++k) {
        phases[k] = std::polar(1.0, -eigenvalues_[k] * t);
    }
    return eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
}

ComplexMatrix expm_hermitian(const ComplexMatrix &h, double t) {
    return Propagator(h).at(t);
}

ComplexMatrix embed_on_qubits(const ComplexMatrix &op, std::span<const int> targets, int num_qubits) {
    if (num_qubits > kMaxQubits) {
        throw_invalid("register of " + std::to_string(num_qubits) + " qubits exceeds the configured maximum");
    }
    check_targets(targets, num_qubits);
    Eigen::Index sub = Eigen::Index{1} << targets.size();
    if (op.rows() != sub || op.cols() != sub) {
        throw_invalid("operator dimension does not match the number of target qubits");
    }
    std::vector<int> rest = complement(targets, num_qubits);
    auto target_off = spread_table(targets);
    auto rest_off = spread_table(rest);
    Eigen::Index dim = Eigen::Index{1} << num_qubits;
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index r : rest_off) {
        for (Eigen::Index j = 0; j < sub; ++j) {
            for (Eigen::Index i = 0; i < sub; ++i) {
                out(r + target_off[i], r + target_off[j]) = op(i, j);
            }
        }
    }
    return out;
}

void apply_on_qubits(ComplexVector &state, const ComplexMatrix &op, std::span<const int> targets) {
    if (!is_power_of_two(state.size())) {
        throw_invalid("state length is not a power of two");
    }
    int num_qubits = log2_exact(state.size());
    check_targets(targets, num_qubits);
    Eigen::Index sub = Eigen::Index{1} << targets.size();
    if (op.rows() != sub || op.cols() != sub) {
        throw_invalid("operator dimension does not match the number of target qubits");
    }
    std::vector<int> rest = complement(targets, num_qubits);
    auto target_off = spread_table(targets);
    auto rest_off = spread_table(rest);
    Eigen::Index nrest = static_cast<Eigen::Index>(rest_off.size());
    ComplexMatrix gathered(sub, nrest);
    for (Eigen::Index r = 0; r < nrest; ++r) {
        for (Eigen::Index s = 0; s < sub; ++s) {
            gathered(s, r) = state[rest_off[r] + target_off[s]];
        }
    }
    ComplexMatrix result = op * gathered;
    for (Eigen::Index r = 0; r < nrest; ++r) {
        for (Eigen::Index s = 0; s < sub; ++s) {
            state[rest_off[r] + target_off[s]] = result(s, r);
        }
    }
}

StateVector apply_on_qubits(const StateVector &state, const ComplexMatrix &op, std::span<const int> targets) {
    ComplexVector amps = state.amplitudes();
    apply_on_qubits(amps, op, targets);
    return StateVector::from_amplitudes(std::move(amps));
}

void left_apply_on_qubits(ComplexMatrix &m, const ComplexMatrix &op, std::span<const int> targets) {
    ComplexVector column;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        column = m.col(c);
        apply_on_qubits(column, op, targets);
        m.col(c) = column;
    }
}

ComplexMatrix partial_trace_operator(const ComplexMatrix &op, std::span<const int> keep, int num_qubits) {
    Eigen::Index dim = Eigen::Index{1} << num_qubits;
    if (op.rows() != dim || op.cols() != dim) {
        throw_invalid("operator dimension does not match the register");
    }
    check_targets(keep, num_qubits);
    std::vector<int> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    std::vector<int> traced = complement(kept, num_qubits);
    auto keep_off = spread_table(kept);
    auto trace_off = spread_table(traced);
    Eigen::Index dk = static_cast<Eigen::Index>(keep_off.size());
    ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
    for (Eigen::Index j = 0; j < dk; ++j) {
        for (Eigen::Index i = 0; i < dk; ++i) {
            Complex acc = 0.0;
            for (Eigen::Index r : trace_off) {
                acc += op(keep_off[i] + r, keep_off[j] + r);
            }
            out(i, j) = acc;
        }
    }
    return out;
}

void validate_density(const ComplexMatrix &rho) {
    if (rho.rows() != rho.cols() || rho.rows() == 0) {
        throw_invalid("density matrix must be square and non-empty");
    }
    if (!is_hermitian(rho, kDensityTol)) {
        throw_invalid("density matrix is not Hermitian");
    }
    double tr = rho.trace().real();
    if (std::abs(tr - 1.0) > kDensityTol) {
        throw_invalid("density matrix trace " + std::to_string(tr) + " differs from 1");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw_numerical("density eigendecomposition failed");
    }
    if (solver.eigenvalues().minCoeff() < -kDensityTol) {
        throw_invalid("density matrix has a negative eigenvalue below the PSD floor");
    }
}

ComplexMatrix partial_trace(const ComplexMatrix &rho, std::span<const int> keep, int num_qubits) {
    validate_density(rho);
    return partial_trace_operator(rho, keep, num_qubits);
}

RealVector density_spectrum(const ComplexMatrix &rho) {
    validate_density(rho);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseMax(0.0);
}

double purity(const ComplexMatrix &rho) {
    return trace_of_product(rho, rho).real();
}

ComplexMatrix haar_unitary(Eigen::Index dim, SeededRng rng) {
    if (dim < 1 || dim > kMaxDimension) {
        throw_invalid("Haar unitary dimension out of range");
    }
    ComplexMatrix g(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            g(i, j) = rng.complex_normal();
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix &r = qr.matrixQR();
    for (Eigen::Index k = 0; k < dim; ++k) {
        Complex d = r(k, k);
        double mag = std::abs(d);
        q.col(k) *= mag > 0.0 ? d / mag : Complex(1.0);
    }
    return q;
}

ComplexVector haar_state(Eigen::Index dim, SeededRng &rng) {
    ComplexVector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        v[i] = rng.complex_normal();
    }
    return v / v.norm();
}

}  // namespace projecho
