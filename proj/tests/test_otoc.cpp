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
#include <vector>

#include "projecho/echo.hpp"
#include "projecho/entropy.hpp"
#include "projecho/error.hpp"
#include "projecho/otoc.hpp"
#include "support.hpp"

using namespace projecho;
using projecho::testing::four_qubit_tfim;
using projecho::testing::max_abs;
using projecho::testing::random_hermitian;
using projecho::testing::random_state;

namespace {

const StateVector kPsi0 = StateVector::basis(2, 0);
const StateVector kB0 = StateVector::basis(1, 0);

// Dense full-register product for Tr[R^dag(t) W^dag R(t) W].
Complex dense_otoc(const Hamiltonian &h, const ComplexMatrix &r_b, const ComplexMatrix &w, double t) {
    const Bipartition &bip = h.bipartition();
    ComplexMatrix r = embed_on_qubits(r_b, bip.b_qubits(), bip.num_qubits());
    ComplexMatrix u = h.propagator(t);
    ComplexMatrix rt = u.adjoint() * r * u;
    return (rt.adjoint() * w.adjoint() * rt * w).trace();
}

// Average of R O R^dag over sampled Haar R on B.
ComplexMatrix sampled_twirl(const ComplexMatrix &o, const Bipartition &bip, int n, std::uint64_t seed) {
    ComplexMatrix acc = ComplexMatrix::Zero(o.rows(), o.cols());
    for (int k = 0; k < n; ++k) {
        ComplexMatrix r = embed_on_qubits(haar_unitary(static_cast<Eigen::Index>(bip.dim_b()), SeededRng(seed, k)),
                                          bip.b_qubits(), bip.num_qubits());
        acc += r * o * r.adjoint();
    }
    return acc / static_cast<double>(n);
}

}  // namespace

TEST_CASE("OTOC at t = 0 reduces to a B-sector overlap") {
    Hamiltonian h = four_qubit_tfim();
    ComplexMatrix w = otoc_weight(kPsi0, kB0, h.bipartition());
    CHECK(std::abs(otoc(h, ComplexMatrix::Identity(2, 2), w, 0.0) - Complex(2.0)) < 1e-12);
    CHECK(std::abs(otoc(h, ComplexMatrix::Identity(2, 2), w, 1.3) - Complex(2.0)) < 1e-12);
    for (std::uint64_t k = 0; k < 5; ++k) {
        ComplexMatrix r = haar_unitary(2, SeededRng(3, k));
        double expected = 2.0 * std::norm(r(0, 0));
        CHECK(std::abs(otoc(h, r, w, 0.0) - Complex(expected)) < 1e-12);
    }
}

TEST_CASE("OTOC matches a dense product") {
    SeededRng rng(5);
    Bipartition bip(2, 2, {0, 2});
    Hamiltonian h(random_hermitian(16, rng), bip, "random");
    ComplexMatrix w = random_hermitian(16, rng);
    for (double t : {0.0, 0.4, 2.2}) {
        ComplexMatrix r = haar_unitary(4, SeededRng(6, static_cast<std::uint64_t>(t * 10)));
        CHECK(std::abs(otoc(h, r, w, t) - dense_otoc(h, r, w, t)) < 1e-10);
    }
    CHECK_THROWS_AS(otoc(h, ComplexMatrix::Identity(2, 2), w, 0.0), Error);
    CHECK_THROWS_AS(otoc(h, 2.0 * ComplexMatrix::Identity(4, 4), w, 0.0), Error);
    CHECK_THROWS_AS(otoc(h, ComplexMatrix::Identity(4, 4), ComplexMatrix::Identity(8, 8), 0.0), Error);
}

TEST_CASE("exact twirl examples") {
    Bipartition bip(1, 1);
    CHECK(max_abs(haar_twirl_exact(ComplexMatrix::Identity(4, 4), bip) - ComplexMatrix::Identity(4, 4)) < 1e-14);
    // A is qubit 1, B is qubit 0.
    ComplexMatrix xy = kron(pauli::x(), pauli::y());
    CHECK(max_abs(haar_twirl_exact(xy, bip)) < 1e-14);
    ComplexMatrix xi = kron(pauli::x(), pauli::identity());
    CHECK(max_abs(haar_twirl_exact(xi, bip) - xi) < 1e-14);

    SeededRng rng(7);
    Bipartition bip2(1, 2, {0, 2});
    ComplexMatrix o = random_hermitian(8, rng);
    ComplexMatrix exact = haar_twirl_exact(o, bip2);
    ComplexMatrix sampled = sampled_twirl(o, bip2, 4000, 8);
    // Entrywise spread of the sample mean is at most |O| / sqrt(n).
    CHECK(max_abs(exact - sampled) < 5.0 * o.norm() / std::sqrt(4000.0));
}

TEST_CASE("averaged OTOC equals the subsystem purity") {
    Hamiltonian h = four_qubit_tfim();
    ComplexMatrix w = otoc_weight(kPsi0, kB0, h.bipartition());
    for (double t : {0.0, 0.5, 1.0, 2.0, 5.0}) {
        AveragedOtoc exact = averaged_otoc(h, w, t, {}, SeededRng(0));
        CHECK(std::abs(exact.value - purity_oracle(h, kPsi0, kB0, t)) < 1e-10);
        CHECK(std::abs(exact.imag) < 1e-12);
        CHECK(!exact.stderr_value);
    }
    OtocAverageOptions mc{TwirlMode::MonteCarlo, 1000, 1};
    for (double t : {0.5, 2.0}) {
        AveragedOtoc sampled = averaged_otoc(h, w, t, mc, SeededRng(9));
        CHECK(sampled.n_samples == 1000);
        CHECK(std::abs(sampled.value - purity_oracle(h, kPsi0, kB0, t)) < 3.0 * *sampled.stderr_value);
    }
    OtocAverageOptions threaded = mc;
    threaded.threads = 4;
    CHECK(averaged_otoc(h, w, 1.0, threaded, SeededRng(9)).value == averaged_otoc(h, w, 1.0, mc, SeededRng(9)).value);
    mc.n_samples = 1;
    CHECK_THROWS_AS(averaged_otoc(h, w, 1.0, mc, SeededRng(9)), Error);
}

TEST_CASE("OTOC is invariant under a global phase of the propagator") {
    Hamiltonian h = four_qubit_tfim();
    Hamiltonian shifted(h.matrix() + 3.7 * ComplexMatrix::Identity(8, 8), h.bipartition(), "shifted");
    ComplexMatrix w = otoc_weight(kPsi0, kB0, h.bipartition());
    ComplexMatrix r = haar_unitary(2, SeededRng(10));
    CHECK(std::abs(otoc(h, r, w, 1.4) - otoc(shifted, r, w, 1.4)) < 1e-10);
}

TEST_CASE("exact twirl rejects weights outside its domain") {
    Hamiltonian h = four_qubit_tfim();
    const Bipartition &bip = h.bipartition();
    ComplexMatrix w = otoc_weight(kPsi0, kB0, bip);
    CHECK_THROWS_AS(averaged_otoc(h, 2.0 * w, 1.0, {}, SeededRng(0)), Error);
    CHECK_THROWS_AS(averaged_otoc(h, ComplexMatrix::Identity(8, 8) * (std::sqrt(2.0) / 8.0), 1.0, {}, SeededRng(0)),
                    Error);
    // Entangled across A and B.
    ComplexVector bell = ComplexVector::Zero(8);
    bell[0] = bell[3] = 1.0 / std::sqrt(2.0);
    ComplexMatrix entangled = outer(StateVector::from_amplitudes(bell)) * std::sqrt(2.0);
    CHECK_THROWS_AS(averaged_otoc(h, entangled, 1.0, {}, SeededRng(0)), Error);
}

TEST_CASE("OTOC and echo sum agree") {
    Hamiltonian h = four_qubit_tfim();
    for (double t : {0.0, 0.5, 1.0, 2.0, 5.0}) {
        OtocLeReport r = verify_otoc_le(h, kPsi0, kB0, t);
        CHECK(r.discrepancy < 1e-10);
    }
    CHECK(std::abs(verify_otoc_le(h, kPsi0, kB0, 0.0).lhs - 1.0) < 1e-12);

    SeededRng rng(11);
    Bipartition bip(2, 1);
    Hamiltonian local = build_local(random_hermitian(4, rng), random_hermitian(2, rng), bip);
    OtocLeReport free = verify_otoc_le(local, kPsi0, kB0, 3.0);
    CHECK(std::abs(free.lhs - 1.0) < 1e-10);
    CHECK(std::abs(free.rhs - 1.0) < 1e-10);

    Bipartition bip2(2, 2, {1, 3});
    Hamiltonian random(random_hermitian(16, rng), bip2, "random");
    StateVector psi0 = random_state(2, rng);
    StateVector b0 = random_state(2, rng);
    CHECK(verify_otoc_le(random, psi0, b0, 0.7).discrepancy < 1e-10);
}
