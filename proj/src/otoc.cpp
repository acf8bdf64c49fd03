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

#include "projecho/otoc.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "parallel.hpp"
#include "projecho/echo.hpp"
#include "projecho/error.hpp"
#include "projecho/tripartite.hpp"

namespace projecho {

namespace {

constexpr double kWeightTol = 1e-9;

void check_operator(const Hamiltonian &h, const ComplexMatrix &w) {
    if (w.rows() != h.dim() || w.cols() != h.dim()) {
        throw_invalid("W has shape " + std::to_string(w.rows()) + "x" + std::to_string(w.cols()) +
                      ", expected the full register dimension " + std::to_string(h.dim()));
    }
}

void check_r(const Bipartition &bip, const ComplexMatrix &r_b) {
    auto db = static_cast<Eigen::Index>(bip.dim_b());
    if (r_b.rows() != db || r_b.cols() != db) {
        throw_invalid("R_B must be a " + std::to_string(db) + "x" + std::to_string(db) + " matrix");
    }
    if (unitarity_error(r_b) > 1e-10) {
        throw_invalid("R_B is not unitary");
    }
}

// Tr[R^dagger X^dagger R X] with X = U W U^dagger, using only left
// multiplications by R on the B qubits.
Complex twisted_trace(const ComplexMatrix &x, const ComplexMatrix &r_b, const Bipartition &bip) {
    ComplexMatrix rx = x;
    left_apply_on_qubits(rx, r_b, bip.b_qubits());
    ComplexMatrix rdx = x.adjoint();
    left_apply_on_qubits(rdx, r_b.adjoint(), bip.b_qubits());
    return trace_of_product(rdx, rx);
}

void guard(Complex value, const ComplexMatrix &w, const Bipartition &bip) {
    double bound = static_cast<double>(bip.dim_a() * bip.dim_b()) * w.squaredNorm();
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag()) || std::abs(value) > bound * (1.0 + 1e-9)) {
        throw_numerical("OTOC value exceeds the trace bound D_A D_B |W|^2");
    }
}

void check_weight(const ComplexMatrix &w, const Bipartition &bip) {
    const double scale = std::sqrt(static_cast<double>(bip.dim_b()));
    ComplexMatrix rho = w / scale;
    if (!is_hermitian(rho, kWeightTol) || std::abs(trace(rho) - Complex(1.0)) > kWeightTol) {
        throw_invalid("exact twirl needs W = sqrt(D_B) rho0 with rho0 a density matrix");
    }
    if (std::abs(purity(rho) - 1.0) > kWeightTol) {
        throw_invalid("exact twirl needs a pure initial state in W");
    }
    ComplexMatrix rho_b = partial_trace(rho, bip.b_qubits(), bip.num_qubits());
    if (std::abs(purity(rho_b) - 1.0) > kWeightTol) {
        throw_invalid("exact twirl needs a product state psi0 (x) B0 in W");
    }
}

}  // namespace

Complex otoc(const Hamiltonian &h, const ComplexMatrix &r_b, const ComplexMatrix &w, double t) {
    check_operator(h, w);
    check_r(h.bipartition(), r_b);
    ComplexMatrix u = h.propagator(t);
    Complex value = twisted_trace(u * w * u.adjoint(), r_b, h.bipartition());
    guard(value, w, h.bipartition());
    return value;
}

ComplexMatrix haar_twirl_exact(const ComplexMatrix &o, const Bipartition &bip) {
    const auto dim = static_cast<Eigen::Index>(bip.dim_a() * bip.dim_b());
    if (o.rows() != dim || o.cols() != dim) {
        throw_invalid("operator does not match the bipartition dimension");
    }
    ComplexMatrix reduced = partial_trace_operator(o, bip.a_qubits(), bip.num_qubits());
    return embed_on_qubits(reduced, bip.a_qubits(), bip.num_qubits()) / static_cast<double>(bip.dim_b());
}

ComplexMatrix otoc_weight(const StateVector &psi0, const StateVector &b0, const Bipartition &bip) {
    return outer(product_state(bip, psi0, b0)) * std::sqrt(static_cast<double>(bip.dim_b()));
}

OtocSample sample_otoc(const Hamiltonian &h, const ComplexMatrix &w, double t, const SeededRng &rng,
                       std::uint64_t r_stream) {
    ComplexMatrix r = haar_unitary(static_cast<Eigen::Index>(h.bipartition().dim_b()), rng.derive(r_stream));
    return OtocSample{t, otoc(h, r, w, t), r_stream};
}

AveragedOtoc averaged_otoc(const Hamiltonian &h, const ComplexMatrix &w, double t, const OtocAverageOptions &options,
                           const SeededRng &rng) {
    check_operator(h, w);
    const Bipartition &bip = h.bipartition();
    ComplexMatrix u = h.propagator(t);
    ComplexMatrix x = u * w * u.adjoint();
    AveragedOtoc out;
    if (options.mode == TwirlMode::Exact) {
        check_weight(w, bip);
        Complex value = trace_of_product(haar_twirl_exact(x.adjoint(), bip), x);
        out.value = value.real();
        out.imag = value.imag();
        return out;
    }
    if (options.n_samples < 2) {
        throw_invalid("Monte Carlo OTOC average needs at least two samples");
    }
    const auto db = static_cast<Eigen::Index>(bip.dim_b());
    const std::uint64_t n = options.n_samples;
    std::vector<Complex> values(n);
    detail::parallel_chunks(n, detail::kReductionChunks, options.threads,
                            [&](std::size_t, std::size_t lo, std::size_t hi) {
                                for (std::size_t k = lo; k < hi; ++k) {
                                    ComplexMatrix r = haar_unitary(db, rng.derive(k));
                                    values[k] = twisted_trace(x, r, bip);
                                    guard(values[k], w, bip);
                                }
                            });
    Complex mean = 0.0;
    for (const auto &v : values) {
        mean += v;
    }
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (const auto &v : values) {
        var += (v.real() - mean.real()) * (v.real() - mean.real());
    }
    var /= static_cast<double>(n - 1);
    out.value = mean.real();
    out.imag = mean.imag();
    out.stderr_value = std::sqrt(var / static_cast<double>(n));
    out.n_samples = n;
    return out;
}

OtocLeReport verify_otoc_le(const Hamiltonian &h, const StateVector &psi0, const StateVector &b0, double t) {
    const Bipartition &bip = h.bipartition();
    AveragedOtoc avg = averaged_otoc(h, otoc_weight(psi0, b0, bip), t, {}, SeededRng(0));
    OtocLeReport report;
    report.t = t;
    report.lhs = avg.value;
    report.rhs = echo_amplitudes(h, psi0, b0, t).total();
    report.discrepancy = std::abs(report.lhs - report.rhs);
    return report;
}

}  // namespace projecho
