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

#ifndef PROJECHO_ENTROPY_HPP
#define PROJECHO_ENTROPY_HPP

#include <cstdint>
#include <optional>
#include <string_view>

#include "projecho/echo.hpp"
#include "projecho/models.hpp"
#include "projecho/qlinalg.hpp"
#include "projecho/rng.hpp"

namespace projecho {

enum class RenyiMethod {
    Oracle,
    ProjectedLe,
    Protocol321,
    Protocol322,
    Randomized2Design,
    Transfer,
};

std::string_view to_string(RenyiMethod method);

/// Renyi entropy of order n in nats, S = log(trace) / (1 - n), with
/// trace = Tr rho_A^n (the purity for n = 2).
struct RenyiResult {
    int order = 2;
    double value = 0.0;
    double trace = 1.0;
    RenyiMethod method = RenyiMethod::Oracle;
    /// Standard error of `value` for sampled estimators.
    std::optional<double> stderr_value;
    /// Standard error of `trace` for sampled estimators.
    std::optional<double> stderr_trace;
    /// Shot bookkeeping for the sampled protocols (zero otherwise).
    std::uint64_t failures = 0;
    std::uint64_t rounds = 0;

    /// Throws a numerical error when trace <= 0.
    static RenyiResult from_trace(int order, double trace, RenyiMethod method,
                                  std::optional<double> stderr_trace = std::nullopt);
};

/// rho_A(t) = Tr_B[U(t) |psi0,B0><psi0,B0| U(t)^dagger].
ComplexMatrix reduced_density_a(const Hamiltonian &h, const StateVector &psi0, const StateVector &b0, double t);

/// Tr rho_A(t)^2 from the dense partial trace.
double purity_oracle(const Hamiltonian &h, const StateVector &psi0, const StateVector &b0, double t);

/// Tr rho_A(t)^n by dense matrix powers.
double renyi_trace_oracle(const Hamiltonian &h, const StateVector &psi0, const StateVector &b0, double t, int n);

/// S2 = -log(D_B - n_not / n_cycle) with the binomial error of each m1 block
/// propagated.
RenyiResult renyi2_from_counts(const ShotCounts &counts);

/// Fixed-B0 variant: each round rotates B1 by a fresh Haar unitary, runs the
/// echo and checks B1 then A. Purity estimate D_B (1 - n_not / n_total).
RenyiResult renyi2_random_unitary(const Hamiltonian &h, const StateVector &psi0, const StateVector &b0, double t,
                                  std::uint64_t n_total, const SeededRng &rng, int threads = 1);

enum class RandomizedRegion {
    /// Haar unitaries on the whole A u B register; estimates Tr rho(t)^2.
    Whole,
    /// Haar unitaries on A after tracing out B; estimates Tr rho_A(t)^2.
    SubsystemA,
};

struct RandomizedOptions {
    std::uint64_t n_unitaries = 10000;
    /// Shots per unitary and experiment; 0 evaluates each <rho>_u exactly.
    std::uint64_t shots_per_u = 0;
    RandomizedRegion region = RandomizedRegion::Whole;
    int threads = 1;
};

struct RandomizedPurity {
    double purity_t = 0.0;
    double purity_0 = 0.0;
    double stderr_t = 0.0;
    double stderr_0 = 0.0;
    /// Ensemble averages of <rho(t)>_u^2 and <rho(0)>_u^2.
    double second_moment_t = 0.0;
    double second_moment_0 = 0.0;
    /// The discarded root of the initial-purity quadratic (never above 1/D).
    double rejected_root = 0.0;
    std::uint64_t dim = 0;
    std::uint64_t n_unitaries = 0;
};

/// Solves the 2-design relation for the initial purity, taking the root
/// 1/D + sqrt(...) . Throws on a discriminant below -1e-9.
double solve_initial_purity(double second_moment_0, double dim);

/// Solves the 2-design relation for Tr rho(t)^2 given the initial purity.
/// Throws when purity_0 is at the maximally mixed value 1/D.
double solve_purity_t(double second_moment_t, double purity_0, double dim);

/// Randomized-measurement purity without time reversal: for each Haar u,
/// <rho>_u = Tr(u^dagger rho0 u rho) is the return probability onto rho0
/// after rotating rho(t) (and, separately, rho(0)) by u. The two second
/// moments are inverted for Tr rho0^2 and then Tr rho(t)^2.
RandomizedPurity randomized_purity_no_reversal(const Hamiltonian &h, const ComplexMatrix &rho0, double t,
                                               const RandomizedOptions &options, const SeededRng &rng);

/// Tr(T^n) of the echo amplitude matrix, which equals Tr rho_A^n.
RenyiResult nth_renyi_transfer(const EchoAmplitudeMatrix &echo, int n);
RenyiResult nth_renyi_transfer(const Hamiltonian &h, const StateVector &psi0, const StateVector &b0, double t, int n);

struct RenyiBounds {
    double lower = 0.0;
    double upper = 0.0;
};

/// lower = log Tr(|T|^n) / (1 - n) with |T| taken entrywise,
/// upper = -log sum |T|^2.
RenyiBounds nth_renyi_bounds(const EchoAmplitudeMatrix &echo, int n);

}  // namespace projecho

#endif
