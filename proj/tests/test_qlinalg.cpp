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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "projecho/error.hpp"
#include "projecho/qlinalg.hpp"
#include "support.hpp"

using namespace projecho;
using projecho::testing::max_abs;
using projecho::testing::random_hermitian;
using projecho::testing::random_matrix;
using projecho::testing::random_state;

namespace {

// exp(-i h t) by a long Taylor series after scaling; only for small norms.
ComplexMatrix expm_taylor(const ComplexMatrix &h, double t) {
    int squarings = 8;
    ComplexMatrix a = h * Complex(0.0, -t / std::pow(2.0, squarings));
    ComplexMatrix term = ComplexMatrix::Identity(h.rows(), h.cols());
    ComplexMatrix sum = term;
    for (int k = 1; k < 30; ++k) {
        term = term * a / static_cast<double>(k);
        sum += term;
    }
    for (int k = 0; k < squarings; ++k) {
        sum = sum * sum;
    }
    return sum;
}

// Reduced density matrix by explicit index contraction:
// out[i][j] = sum_e rho[ins(i, e)][ins(j, e)] with kept bits from i, j and
// traced bits from e.
ComplexMatrix contract_trace(const ComplexMatrix &rho, const std::vector<int> &keep, int n) {
    std::vector<int> traced;
    for (int q = 0; q < n; ++q) {
        bool kept = false;
        for (int k : keep) {
            kept = kept || k == q;
        }
        if (!kept) {
            traced.push_back(q);
        }
    }
    auto assemble = [&](int i, int e) {
        int idx = 0;
        for (std::size_t k = 0; k < keep.size(); ++k) {
            idx |= ((i >> k) & 1) << keep[k];
        }
        for (std::size_t k = 0; k < traced.size(); ++k) {
            idx |= ((e >> k) & 1) << traced[k];
        }
        return idx;
    };
    int dk = 1 << keep.size();
    int de = 1 << traced.size();
    ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
    for (int i = 0; i < dk; ++i) {
        for (int j = 0; j < dk; ++j) {
            for (int e = 0; e < de; ++e) {
                out(i, j) += rho(assemble(i, e), assemble(j, e));
            }
        }
    }
    return out;
}

}  // namespace

TEST_CASE("kron identities and mixed product") {
    CHECK(max_abs(kron(pauli::identity(), pauli::identity()) - ComplexMatrix::Identity(4, 4)) == 0.0);
    ComplexMatrix zz = kron(pauli::z(), pauli::z());
    Eigen::VectorXcd expected(4);
    expected << 1, -1, -1, 1;
    CHECK(max_abs(zz - ComplexMatrix(expected.asDiagonal())) == 0.0);

    SeededRng rng(1);
    ComplexMatrix a = random_matrix(2, 2, rng);
    ComplexMatrix b = random_matrix(2, 2, rng);
    ComplexMatrix x = random_matrix(2, 1, rng);
    ComplexMatrix y = random_matrix(2, 1, rng);
    ComplexMatrix lhs = kron(a, b) * kron(x, y);
    ComplexMatrix rhs = kron(a * x, b * y);
    CHECK(max_abs(lhs - rhs) < 1e-12);
}

TEST_CASE("kron rejects dimensions beyond the configured maximum") {
    ComplexMatrix big = ComplexMatrix::Identity(1 << 8, 1 << 8);
    CHECK_THROWS_AS(kron(big, big), Error);
}

TEST_CASE("expm_hermitian closed forms") {
    ComplexMatrix u = expm_hermitian(pauli::z(), std::numbers::pi / 2);
    CHECK(std::abs(u(0, 0) - Complex(0, -1)) < 1e-14);
    CHECK(std::abs(u(1, 1) - Complex(0, 1)) < 1e-14);
    CHECK(std::abs(u(0, 1)) < 1e-14);

    CHECK(max_abs(expm_hermitian(pauli::x(), std::numbers::pi) + ComplexMatrix::Identity(2, 2)) < 1e-12);

    SeededRng rng(2);
    ComplexMatrix h = random_hermitian(8, rng);
    CHECK(max_abs(expm_hermitian(h, 0.0) - ComplexMatrix::Identity(8, 8)) < 1e-12);
}

TEST_CASE("propagator agrees with a Taylor series and reverses exactly") {
    SeededRng rng(3);
    ComplexMatrix h = random_hermitian(8, rng);
    Propagator prop(h);
    for (double t : {0.3, 1.7, -2.2}) {
        ComplexMatrix u = prop.at(t);
        CHECK(max_abs(u - expm_taylor(h, t)) < 1e-9);
        CHECK(unitarity_error(u) < 1e-10);
        CHECK(max_abs(u * prop.at(-t) - ComplexMatrix::Identity(8, 8)) < 1e-10);
    }
}

TEST_CASE("propagator rejects non-Hermitian input") {
    SeededRng rng(4);
    CHECK_THROWS_AS(Propagator(random_matrix(4, 4, rng)), Error);
}

TEST_CASE("matrix utilities") {
    SeededRng rng(5);
    ComplexMatrix a = random_matrix(4, 4, rng);
    ComplexMatrix b = random_matrix(4, 4, rng);
    CHECK(max_abs(dagger(dagger(a)) - a) == 0.0);
    CHECK(std::abs(trace(matmul(a, b)) - trace(matmul(b, a))) < 1e-12);
    CHECK(std::abs(trace_of_product(a, b) - trace(a * b)) < 1e-12);
    ComplexMatrix u = haar_unitary(4, rng.derive(1));
    CHECK(std::abs(trace(u * a * u.adjoint()) - trace(a)) < 1e-12);
    ComplexMatrix p0 = outer(StateVector::basis(1, 0));
    CHECK(max_abs(p0 - ComplexMatrix(Eigen::Vector2cd(1, 0).asDiagonal())) == 0.0);
}

TEST_CASE("state vectors stay normalized") {
    CHECK_THROWS_AS(StateVector::from_amplitudes(Eigen::Vector2cd(1, 1)), Error);
    CHECK_THROWS_AS(StateVector::from_amplitudes(Eigen::Vector3cd(1, 0, 0)), Error);
    StateVector s = StateVector::from_amplitudes(Eigen::Vector2cd(1, 1), true);
    CHECK(std::abs(s.amplitudes().norm() - 1.0) < 1e-15);
    CHECK(!s.basis_index().has_value());
    CHECK(StateVector::basis(3, 5).basis_index() == 5u);

    SeededRng rng(6);
    StateVector psi = random_state(4, rng);
    ComplexMatrix u = haar_unitary(4, rng.derive(1));
    std::vector<int> targets{3, 1};
    StateVector out = apply_on_qubits(psi, u, targets);
    CHECK(std::abs(out.amplitudes().norm() - 1.0) < 1e-10);
}

TEST_CASE("qubit embedding matches explicit tensor products") {
    SeededRng rng(7);
    ComplexMatrix op = random_matrix(4, 4, rng);
    // Targets {1, 2} of a 4-qubit register: I (x) op (x) I with qubit 0 rightmost.
    std::vector<int> targets{1, 2};
    ComplexMatrix expected = kron(pauli::identity(), kron(op, pauli::identity()));
    CHECK(max_abs(embed_on_qubits(op, targets, 4) - expected) < 1e-14);

    // Swapped target order is the same operator conjugated by SWAP.
    std::vector<int> swapped{2, 1};
    ComplexMatrix swap = ComplexMatrix::Zero(4, 4);
    swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
    ComplexMatrix expected_swapped = kron(pauli::identity(), kron(swap * op * swap, pauli::identity()));
    CHECK(max_abs(embed_on_qubits(op, swapped, 4) - expected_swapped) < 1e-14);

    ComplexVector v = random_matrix(16, 1, rng).col(0);
    ComplexVector w = v;
    apply_on_qubits(w, op, swapped);
    CHECK((w - embed_on_qubits(op, swapped, 4) * v).cwiseAbs().maxCoeff() < 1e-12);

    ComplexMatrix m = random_matrix(16, 5, rng);
    ComplexMatrix lm = m;
    left_apply_on_qubits(lm, op, targets);
    CHECK(max_abs(lm - embed_on_qubits(op, targets, 4) * m) < 1e-12);

    CHECK_THROWS_AS(embed_on_qubits(op, std::vector<int>{1, 1}, 4), Error);
    CHECK_THROWS_AS(embed_on_qubits(op, std::vector<int>{1, 4}, 4), Error);
}

TEST_CASE("partial trace examples") {
    ComplexVector bell = ComplexVector::Zero(4);
    bell[0] = bell[3] = 1.0 / std::sqrt(2.0);
    ComplexMatrix rho = outer(StateVector::from_amplitudes(bell));
    ComplexMatrix reduced = partial_trace(rho, std::vector<int>{0}, 2);
    CHECK(max_abs(reduced - ComplexMatrix::Identity(2, 2) / 2.0) < 1e-15);

    SeededRng rng(8);
    ComplexMatrix ra = outer(random_state(2, rng));
    ComplexMatrix rb = outer(random_state(1, rng));
    // Qubit 0 is B here, qubits 1, 2 are A.
    ComplexMatrix product = kron(ra, rb);
    CHECK(max_abs(partial_trace(product, std::vector<int>{1, 2}, 3) - ra) < 1e-14);
    CHECK(max_abs(partial_trace(product, std::vector<int>{0}, 3) - rb) < 1e-14);
}

TEST_CASE("partial trace against a four-index contraction") {
    SeededRng rng(9);
    for (int trial = 0; trial < 5; ++trial) {
        ComplexMatrix rho = outer(random_state(3, rng));
        std::vector<int> keep{0, 1};
        ComplexMatrix reduced = partial_trace(rho, keep, 3);
        ComplexMatrix oracle = contract_trace(rho, keep, 3);
        CHECK(max_abs(reduced - oracle) < 1e-12);
        CHECK(std::abs(trace(reduced) - 1.0) < 1e-12);
        CHECK(std::abs(purity(reduced) - (oracle * oracle).trace().real()) < 1e-12);

        std::vector<int> scattered{2, 0};
        CHECK(max_abs(partial_trace(rho, scattered, 3) - contract_trace(rho, {0, 2}, 3)) < 1e-12);
    }
}

TEST_CASE("partial trace edge cases and validation") {
    SeededRng rng(10);
    ComplexMatrix rho = outer(random_state(3, rng));
    CHECK(max_abs(partial_trace(rho, std::vector<int>{0, 1, 2}, 3) - rho) < 1e-15);
    ComplexMatrix scalar = partial_trace(rho, std::vector<int>{}, 3);
    REQUIRE(scalar.rows() == 1);
    CHECK(std::abs(scalar(0, 0) - 1.0) < 1e-12);

    CHECK_THROWS_AS(partial_trace(rho * 2.0, std::vector<int>{0}, 3), Error);
    ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
    bad(0, 0) = 1.5;
    bad(1, 1) = -0.5;
    CHECK_THROWS_AS(validate_density(bad), Error);
    CHECK_THROWS_AS(partial_trace(rho, std::vector<int>{3}, 3), Error);
}

TEST_CASE("purity bounds for random mixed states") {
    SeededRng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        ComplexMatrix g = random_matrix(8, 3, rng);
        ComplexMatrix rho = g * g.adjoint();
        rho /= trace(rho).real();
        double p = purity(rho);
        CHECK(p >= 1.0 / 8 - 1e-12);
        CHECK(p <= 1.0 + 1e-10);
        CHECK(density_spectrum(rho).minCoeff() >= 0.0);
    }
}

TEST_CASE("haar unitaries are unitary and reproducible") {
    SeededRng rng(12);
    for (int dim : {1, 2, 5, 16}) {
        ComplexMatrix u = haar_unitary(dim, rng.derive(dim));
        CHECK(unitarity_error(u) < 1e-12);
        CHECK(max_abs(u - haar_unitary(dim, rng.derive(dim))) == 0.0);
    }
}

TEST_CASE("haar first and second moments") {
    SeededRng rng(13);
    const int n = 100000;
    double s1 = 0.0;
    double s2 = 0.0;
    double q1 = 0.0;
    for (int k = 0; k < n; ++k) {
        ComplexMatrix u = haar_unitary(2, rng.derive(k));
        double p = std::norm(u(0, 0));
        s1 += p;
        s2 += p * p;
        q1 += std::norm(haar_unitary(3, rng.derive(n + k))(1, 2));
    }
    double mean = s1 / n;
    double se = std::sqrt((s2 / n - mean * mean) / n);
    CHECK(std::abs(mean - 0.5) < 5 * se);
    // E|U_ij|^4 = 2 / (d (d + 1)) for d = 2.
    CHECK(std::abs(s2 / n - 1.0 / 3.0) < 0.005);
    CHECK(std::abs(q1 / n - 1.0 / 3.0) < 0.005);
}

TEST_CASE("haar twirl of a Hermitian operator") {
    SeededRng rng(14);
    const int dim = 3;
    const int n = 2000;
    ComplexMatrix x = random_hermitian(dim, rng);
    ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
    Eigen::MatrixXd sq = Eigen::MatrixXd::Zero(dim, dim);
    for (int k = 0; k < n; ++k) {
        ComplexMatrix u = haar_unitary(dim, rng.derive(k));
        ComplexMatrix y = u.adjoint() * x * u;
        sum += y;
        sq += y.cwiseAbs2();
    }
    ComplexMatrix mean = sum / n;
    ComplexMatrix expected = ComplexMatrix::Identity(dim, dim) * (trace(x) / static_cast<double>(dim));
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            double var = sq(i, j) / n - std::norm(mean(i, j));
            CHECK(std::abs(mean(i, j) - expected(i, j)) < 5 * std::sqrt(var / n));
        }
    }
}

TEST_CASE("haar states are unit vectors with uniform weight") {
    SeededRng rng(15);
    const int n = 20000;
    double s = 0.0;
    for (int k = 0; k < n; ++k) {
        SeededRng item = rng.derive(k);
        ComplexVector w = haar_state(4, item);
        CHECK(std::abs(w.norm() - 1.0) < 1e-12);
        s += std::norm(w[2]);
    }
    // |w_i|^2 ~ Beta(1, 3): mean 1/4, variance 3/80.
    CHECK(std::abs(s / n - 0.25) < 5 * std::sqrt(3.0 / 80.0 / n));
}
