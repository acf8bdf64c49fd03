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

#include "projecho/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "echo_internal.hpp"
#include "parallel.hpp"
#include "projecho/error.hpp"

namespace projecho {

namespace {

constexpr double kImagTol = 1e-9;
constexpr double kDiscriminantFloor = -1e-9;
constexpr double kMixedTol = 1e-9;

ComplexMatrix matrix_power(const ComplexMatrix &m, int n) {
    ComplexMatrix out = m;
    for (int k = 1; k < n; ++k) {
        out = out * m;
    }
    return out;
}

void require_order(int n) {
    if (n < 2) {
        throw_invalid("Renyi order must be at least 2 (got " + std::to_string(n) + ")");
    }
}

struct Moments {
    double mean_t = 0.0;
    double mean_0 = 0.0;
    double var_mean_t = 0.0;
    double var_mean_0 = 0.0;
    double cov_mean = 0.0;
};

Moments moments(const std::vector<double> &xt, const std::vector<double> &x0) {
    Moments m;
    const double n = static_cast<double>(xt.size());
    for (std::size_t i = 0; i < xt.size(); ++i) {
        m.mean_t += xt[i];
        m.mean_0 += x0[i];
    }
    m.mean_t /= n;
    m.mean_0 /= n;
    if (xt.size() > 1) {
        double vt = 0.0;
        double v0 = 0.0;
        double c = 0.0;
        for (std::size_t i = 0; i < xt.size(); ++i) {
            double dt = xt[i] - m.mean_t;
            double d0 = x0[i] - m.mean_0;
            vt += dt * dt;
            v0 += d0 * d0;
            c += dt * d0;
        }
        m.var_mean_t = vt / (n - 1) / n;
        m.var_mean_0 = v0 / (n - 1) / n;
        m.cov_mean = c / (n - 1) / n;
    }
    return m;
}

}  // namespace

std::string_view to_string(RenyiMethod method) {
    switch (method) {
        case RenyiMethod::Oracle:
            return "oracle";
        case RenyiMethod::ProjectedLe:
            return "projected-le";
        case RenyiMethod::Protocol321:
            return "protocol-321";
        case RenyiMethod::Protocol322:
            return "protocol-322";
        case RenyiMethod::Randomized2Design:
            return "randomized-2design";
        case RenyiMethod::Transfer:
            return "transfer";
    }
    return "unknown";
}

RenyiResult RenyiResult::from_trace(int order, double trace, RenyiMethod method, std::optional<double> stderr_trace) {
    require_order(order);
    if (!(trace > 0.0)) {
        throw_numerical("Renyi trace " + std::to_string(trace) + " is not positive; the estimate is invalid");
    }
    RenyiResult r;
    r.order = order;
    r.trace = trace;
    r.method = method;
    r.value = std::log(trace) / (1.0 - order) + 0.0;
    if (stderr_trace) {
        r.stderr_trace = *stderr_trace;
        r.stderr_value = *stderr_trace / (trace * (order - 1.0));
    }
    return r;
}

ComplexMatrix reduced_density_a(const Hamiltonian &h, const StateVector &psi0, const StateVector &b0, double t) {
    const Bipartition &bip = h.bipartition();
    StateVector initial = product_state(bip, psi0, b0);
    StateVector evolved = StateVector::from_amplitudes(h.propagator(t) * initial.amplitudes(), true);
    return partial_trace(outer(evolved), bip.a_qubits(), bip.num_qubits());
}

double purity_oracle(const Hamiltonian &h, const StateVector &psi0, const StateVector &b0, double t) {
    return purity(reduced_density_a(h, psi0, b0, t));
}

double renyi_trace_oracle(const Hamiltonian &h, const StateVector &psi0, const StateVector &b0, double t, int n) {
    require_order(n);
    return matrix_power(reduced_density_a(h, psi0, b0, t), n).trace().real();
}

RenyiResult renyi2_from_counts(const ShotCounts &counts) {
    if (counts.n_cycle == 0 || counts.dim_b == 0) {
        throw_invalid("empty shot counts");
    }
    const double n_cycle = static_cast<double>(counts.n_cycle);
    double purity_est = static_cast<double>(counts.dim_b) - static_cast<double>(counts.n_not) / n_cycle;
    double var = 0.0;
    for (std::uint64_t s : counts.n_success) {
        double p = static_cast<double>(s) / n_cycle;
        var += p * (1.0 - p) / n_cycle;
    }
    RenyiResult r = RenyiResult::from_trace(2, purity_est, RenyiMethod::Protocol321, std::sqrt(var));
    r.failures = counts.n_not;
    r.rounds = counts.dim_b * counts.n_cycle;
    return r;
}

RenyiResult renyi2_random_unitary(const Hamiltonian &h, const StateVector &psi0, const StateVector &b0, double t,
                                  std::uint64_t n_total, const SeededRng &rng, int threads) {
    if (n_total == 0) {
        throw_invalid("n_total must be positive");
    }
    auto a0 = psi0.basis_index();
    auto b0_label = b0.basis_index();
    if (!a0 || !b0_label) {
        throw_invalid("psi0 and B0 must be computational basis states for shot sampling");
    }
    detail::EchoEvolver evolver(h, t);
    const auto &layout = evolver.layout();
    const auto db = static_cast<Eigen::Index>(layout.dim_b());
    const auto da = static_cast<Eigen::Index>(layout.dim_a());

    // The echo is linear in the B1 input, so the final state for input
    // u|B0> is sum_m (u|B0>)_m phi_m with phi_m the evolved |m, psi0, B0>.
    // Only the B1 = B0 sector enters the B1 and A checks.
    ComplexMatrix sector(da * db, db);
    for (Eigen::Index m = 0; m < db; ++m) {
        StateVector input = prepare_initial(psi0, b0, BasisLabel{static_cast<std::uint64_t>(m)}, layout);
        ComplexVector phi = evolver.evolve(input.amplitudes());
        for (Eigen::Index b2 = 0; b2 < db; ++b2) {
            for (Eigen::Index a = 0; a < da; ++a) {
                sector(b2 * da + a, m) = phi[static_cast<Eigen::Index>(layout.index(*b0_label, a, b2))];
            }
        }
    }

    std::vector<std::uint64_t> failures(detail::kReductionChunks, 0);
    detail::parallel_chunks(n_total, detail::kReductionChunks, threads,
                            [&](std::size_t chunk, std::size_t lo, std::size_t hi) {
                                std::uint64_t n_not = 0;
                                for (std::size_t round = lo; round < hi; ++round) {
                                    SeededRng shot = rng.derive(round);
                                    ComplexMatrix u = haar_unitary(db, shot.derive(0));
                                    ComplexVector w = sector * u.col(static_cast<Eigen::Index>(*b0_label));
                                    double p_b1 = w.squaredNorm();
                                    if (!(shot.uniform() < p_b1)) {
                                        ++n_not;
                                        continue;
                                    }
                                    double p_a = 0.0;
                                    for (Eigen::Index b2 = 0; b2 < db; ++b2) {
                                        p_a += std::norm(w[b2 * da + static_cast<Eigen::Index>(*a0)]);
                                    }
                                    if (!(shot.uniform() * p_b1 < p_a)) {
                                        ++n_not;
                                    }
                                }
                                failures[chunk] = n_not;
                            });
    std::uint64_t n_not = 0;
    for (auto f : failures) {
        n_not += f;
    }
    const double n = static_cast<double>(n_total);
    double success = 1.0 - static_cast<double>(n_not) / n;
    double se = static_cast<double>(db) * std::sqrt(success * (1.0 - success) / n);
    RenyiResult r = RenyiResult::from_trace(2, static_cast<double>(db) * success, RenyiMethod::Protocol322, se);
    r.failures = n_not;
    r.rounds = n_total;
    return r;
}

double solve_initial_purity(double second_moment_0, double dim) {
    double disc = 1.0 / (dim * dim) - 1.0 + second_moment_0 * (dim * dim - 1.0);
    if (disc < kDiscriminantFloor) {
        throw_numerical("initial-purity quadratic has a negative discriminant (" + std::to_string(disc) +
                        "); statistical noise too large");
    }
    return 1.0 / dim + std::sqrt(std::max(disc, 0.0));
}

double solve_purity_t(double second_moment_t, double purity_0, double dim) {
    double gap = purity_0 - 1.0 / dim;
    if (gap <= kMixedTol) {
        throw_numerical("initial state is maximally mixed; Tr rho(t)^2 cannot be recovered");
    }
    return (second_moment_t * (dim * dim - 1.0) - 1.0 + purity_0 / dim) / gap;
}

RandomizedPurity randomized_purity_no_reversal(const Hamiltonian &h, const ComplexMatrix &rho0, double t,
                                               const RandomizedOptions &options, const SeededRng &rng) {
    if (options.n_unitaries < 2) {
        throw_invalid("randomized measurement needs at least two unitaries");
    }
    if (rho0.rows() != h.dim() || rho0.cols() != h.dim()) {
        throw_invalid("initial density matrix does not match the Hamiltonian");
    }
    validate_density(rho0);
    const Bipartition &bip = h.bipartition();
    ComplexMatrix u_t = h.propagator(t);
    ComplexMatrix rho_t = u_t * rho0 * u_t.adjoint();
    ComplexMatrix reference = rho0;
    if (options.region == RandomizedRegion::SubsystemA) {
        reference = partial_trace_operator(rho0, bip.a_qubits(), bip.num_qubits());
        rho_t = partial_trace_operator(rho_t, bip.a_qubits(), bip.num_qubits());
    }
    const Eigen::Index dim = reference.rows();

    // A rank-one reference |psi><psi| only enters through u^dagger|psi>, a
    // Haar-random unit vector.
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(reference);
    const bool pure = std::abs(eig.eigenvalues().maxCoeff() - 1.0) < 1e-10;
    const ComplexVector psi = eig.eigenvectors().col(dim - 1);
    if (options.shots_per_u > 0 && !pure) {
        throw_invalid("shot mode needs a pure initial state to project onto");
    }

    const std::uint64_t n_u = options.n_unitaries;
    std::vector<double> xt(n_u);
    std::vector<double> x0(n_u);
    detail::parallel_chunks(
        n_u, detail::kReductionChunks, options.threads, [&](std::size_t, std::size_t lo, std::size_t hi) {
            for (std::size_t k = lo; k < hi; ++k) {
                SeededRng item = rng.derive(k);
                double pt;
                double p0;
                if (pure) {
                    ComplexVector w = haar_state(dim, item);
                    pt = std::clamp(w.dot(rho_t * w).real(), 0.0, 1.0);
                    p0 = std::clamp(w.dot(reference * w).real(), 0.0, 1.0);
                } else {
                    ComplexMatrix u = haar_unitary(dim, item.derive(1));
                    ComplexMatrix rotated = u.adjoint() * reference * u;
                    pt = trace_of_product(rotated, rho_t).real();
                    p0 = trace_of_product(rotated, reference).real();
                }
                if (options.shots_per_u == 0) {
                    xt[k] = pt * pt;
                    x0[k] = p0 * p0;
                    continue;
                }
                // Two independent repetitions per experiment; their product is
                // an unbiased estimate of <rho>_u^2.
                auto fraction = [&](double p) {
                    std::uint64_t hits = 0;
                    for (std::uint64_t s = 0; s < options.shots_per_u; ++s) {
                        hits += item.uniform() < p ? 1 : 0;
                    }
                    return static_cast<double>(hits) / static_cast<double>(options.shots_per_u);
                };
                double ft1 = fraction(pt);
                double ft2 = fraction(pt);
                double f01 = fraction(p0);
                double f02 = fraction(p0);
                xt[k] = ft1 * ft2;
                x0[k] = f01 * f02;
            }
        });

    Moments m = moments(xt, x0);
    const double d = static_cast<double>(dim);
    RandomizedPurity out;
    out.dim = static_cast<std::uint64_t>(dim);
    out.n_unitaries = n_u;
    out.second_moment_t = m.mean_t;
    out.second_moment_0 = m.mean_0;
    out.purity_0 = solve_initial_purity(m.mean_0, d);
    out.rejected_root = 2.0 / d - out.purity_0;
    out.purity_t = solve_purity_t(m.mean_t, out.purity_0, d);

    // First-order propagation of the ensemble covariance of the two means.
    double root = out.purity_0 - 1.0 / d;
    double g0 = root > 0.0 ? (d * d - 1.0) / (2.0 * root) : 0.0;
    double dpt_dlt = (d * d - 1.0) / root;
    double dpt_dp0 = (1.0 / d - out.purity_t) / root;
    out.stderr_0 = g0 * std::sqrt(m.var_mean_0);
    double var_t = dpt_dlt * dpt_dlt * m.var_mean_t + dpt_dp0 * dpt_dp0 * g0 * g0 * m.var_mean_0 +
                   2.0 * dpt_dlt * dpt_dp0 * g0 * m.cov_mean;
    out.stderr_t = std::sqrt(std::max(var_t, 0.0));
    return out;
}

RenyiResult nth_renyi_transfer(const EchoAmplitudeMatrix &echo, int n) {
    require_order(n);
    Complex tr = matrix_power(echo.entries(), n).trace();
    if (std::abs(tr.imag()) > kImagTol) {
        throw_numerical("Tr(T^n) has imaginary part " + std::to_string(tr.imag()) + "; amplitudes are inconsistent");
    }
    if (tr.real() <= 0.0) {
        throw_numerical("Tr(T^n) = " + std::to_string(tr.real()) + " is not positive");
    }
    return RenyiResult::from_trace(n, tr.real(), RenyiMethod::Transfer);
}

RenyiResult nth_renyi_transfer(const Hamiltonian &h, const StateVector &psi0, const StateVector &b0, double t, int n) {
    return nth_renyi_transfer(echo_amplitudes(h, psi0, b0, t), n);
}

RenyiBounds nth_renyi_bounds(const EchoAmplitudeMatrix &echo, int n) {
    require_order(n);
    Eigen::MatrixXd modulus = echo.entries().cwiseAbs();
    Eigen::MatrixXd power = modulus;
    for (int k = 1; k < n; ++k) {
        power = power * modulus;
    }
    RenyiBounds b;
    b.lower = std::log(power.trace()) / (1.0 - n);
    b.upper = -std::log(echo.total());
    return b;
}

}  // namespace projecho
