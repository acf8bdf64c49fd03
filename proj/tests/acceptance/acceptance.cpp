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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "projecho/echo.hpp"
#include "projecho/entropy.hpp"
#include "projecho/error.hpp"
#include "projecho/otoc.hpp"
#include "projecho/report.hpp"
#include "projecho/runner.hpp"
#include "projecho/scenario.hpp"
#include "projecho/tripartite.hpp"

#ifndef PROJECHO_CLI_PATH
#error "PROJECHO_CLI_PATH must be defined"
#endif
#ifndef PROJECHO_SCENARIO_DIR
#error "PROJECHO_SCENARIO_DIR must be defined"
#endif

using namespace projecho;

namespace {

using Clock = std::chrono::steady_clock;

const std::vector<double> kGrid = {0.0, 0.5, 1.0, 2.0, 5.0};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string &what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

Hamiltonian four_qubit() {
    return build_tfim(3, 1.0, 1.05, Bipartition(2, 1));
}

const StateVector kPsi0 = StateVector::basis(2, 0);
const StateVector kB0 = StateVector::basis(1, 0);

// Tr rho_A^n from the dense reduced density matrix spectrum.
double dense_trace_power(const Hamiltonian &h, const StateVector &psi0, const StateVector &b0, double t, int n) {
    ComplexMatrix u = h.propagator(t);
    ComplexVector psi = u * product_state(h.bipartition(), psi0, b0).amplitudes();
    ComplexMatrix rho = psi * psi.adjoint();
    ComplexMatrix rho_a = partial_trace(rho, h.bipartition().a_qubits(), h.bipartition().num_qubits());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(rho_a);
    return eig.eigenvalues().array().pow(n).sum();
}

Outcome criterion_1() {
    Outcome o;
    Hamiltonian h = four_qubit();
    auto start = Clock::now();
    double worst = 0.0;
    for (double t : kGrid) {
        double sum = echo_amplitudes(h, kPsi0, kB0, t).total();
        worst = std::max(worst, std::abs(sum - dense_trace_power(h, kPsi0, kB0, t, 2)));
    }
    double elapsed = seconds_since(start);
    o.detail << "max |sum M - Tr rho_A^2| = " << worst << ", " << elapsed << " s";
    o.require(worst <= 1e-10, "identity tolerance 1e-10");
    o.require(elapsed < 1.0, "runtime < 1 s");
    return o;
}

Outcome criterion_2() {
    Outcome o;
    Hamiltonian h = four_qubit();
    const double t = 1.0;
    const double oracle = -std::log(dense_trace_power(h, kPsi0, kB0, t, 2));
    auto start = Clock::now();
    int within = 0;
    bool identity = true;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        ShotCounts counts = run_protocol_31(h, kPsi0, kB0, t, 20000, SeededRng(seed));
        std::uint64_t pairs = 0;
        for (auto v : counts.n_pair) {
            pairs += v;
        }
        identity = identity && counts.n_not == counts.dim_b * counts.n_cycle - pairs;
        RenyiResult r = renyi2_from_counts(counts);
        within += std::abs(r.value - oracle) <= 3.0 * *r.stderr_value ? 1 : 0;
    }
    double elapsed = seconds_since(start);
    o.detail << within << "/100 seeds within 3 SE, counting identity " << (identity ? "exact" : "violated") << ", "
             << elapsed << " s";
    o.require(identity, "n_not = D_B n_cycle - sum n_pair");
    o.require(within >= 95, ">= 95/100 within 3 SE");
    o.require(elapsed < 30.0, "runtime < 30 s");
    return o;
}

Outcome criterion_3() {
    Outcome o;
    Hamiltonian h = four_qubit();
    const double t = 1.0;
    const double oracle = dense_trace_power(h, kPsi0, kB0, t, 2);
    auto start = Clock::now();
    int within = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        RenyiResult r = renyi2_random_unitary(h, kPsi0, kB0, t, 100000, SeededRng(seed));
        within += std::abs(r.trace - oracle) <= 3.0 * *r.stderr_trace ? 1 : 0;
    }
    o.detail << within << "/100 seeds within 3 SE, " << seconds_since(start) << " s";
    o.require(within >= 95, ">= 95/100 within 3 SE");
    return o;
}

Outcome criterion_4() {
    Outcome o;
    Hamiltonian h = four_qubit();
    ComplexMatrix w = otoc_weight(kPsi0, kB0, h.bipartition());
    double worst = 0.0;
    int mc_within = 0;
    for (std::size_t i = 0; i < kGrid.size(); ++i) {
        OtocLeReport r = verify_otoc_le(h, kPsi0, kB0, kGrid[i]);
        worst = std::max(worst, r.discrepancy);
        AveragedOtoc mc = averaged_otoc(h, w, kGrid[i], {TwirlMode::MonteCarlo, 1000, 1}, SeededRng(100 + i));
        // At t = 0 every sample equals the mean and the error vanishes.
        double tol = std::max(3.0 * *mc.stderr_value, 1e-12);
        mc_within += std::abs(mc.value - r.rhs) <= tol ? 1 : 0;
    }
    o.detail << "max |LHS - RHS| = " << worst << ", Monte Carlo within 3 SE at " << mc_within << "/" << kGrid.size()
             << " times";
    o.require(worst <= 1e-10, "exact twirl tolerance 1e-10");
    o.require(mc_within == static_cast<int>(kGrid.size()), "Monte Carlo within 3 SE");
    return o;
}

Outcome criterion_5() {
    Outcome o;
    Hamiltonian h = four_qubit();
    ComplexMatrix rho0 = outer(product_state(h.bipartition(), kPsi0, kB0));
    RandomizedOptions opts;
    opts.n_unitaries = 10000;
    opts.region = RandomizedRegion::Whole;
    int ok_t = 0;
    int ok_0 = 0;
    int ok_root = 0;
    const double dim = 8.0;
    for (std::size_t i = 0; i < kGrid.size(); ++i) {
        RandomizedPurity r = randomized_purity_no_reversal(h, rho0, kGrid[i], opts, SeededRng(500 + i));
        // Unitary evolution of the full register keeps the purity at one.
        ok_t += std::abs(r.purity_t - 1.0) <= 3.0 * r.stderr_t ? 1 : 0;
        ok_0 += std::abs(r.purity_0 - 1.0) <= 3.0 * r.stderr_0 ? 1 : 0;
        ok_root += r.purity_0 >= 1.0 / dim && r.purity_0 <= 1.0 + 3.0 * r.stderr_0 ? 1 : 0;
    }
    const int n = static_cast<int>(kGrid.size());
    o.detail << "Tr rho^2(t) within 3 SE at " << ok_t << "/" << n << ", P0 at " << ok_0 << "/" << n
             << ", selected root in [1/D, 1] at " << ok_root << "/" << n;
    o.require(ok_t == n, "Tr rho^2(t) within 3 SE");
    o.require(ok_0 == n, "P0 within 3 SE");
    o.require(ok_root == n, "root range");
    return o;
}

Outcome criterion_6() {
    Outcome o;
    Hamiltonian h = four_qubit();
    double worst_trace = 0.0;
    bool bracketed = true;
    double worst_phase = 0.0;
    for (double t : kGrid) {
        EchoAmplitudeMatrix echo = echo_amplitudes(h, kPsi0, kB0, t);
        double s2 = nth_renyi_transfer(echo, 2).value;
        for (int n : {2, 3, 4}) {
            RenyiResult r = nth_renyi_transfer(echo, n);
            worst_trace = std::max(worst_trace, std::abs(r.trace - dense_trace_power(h, kPsi0, kB0, t, n)));
            RenyiBounds b = nth_renyi_bounds(echo, n);
            bracketed = bracketed && b.lower <= r.value + 1e-12 && r.value <= s2 + 1e-12;
        }
        for (auto [m1, m1p] : {std::pair<std::uint64_t, std::uint64_t>{0, 1}, {1, 0}}) {
            for (std::uint64_t m2 : {0u, 1u}) {
                Complex a = echo.amplitude({m1}, {m2});
                Complex b = echo.amplitude({m1p}, {m2});
                if (std::abs(a) < 1e-6 || std::abs(b) < 1e-6) {
                    continue;
                }
                double beta = recover_phase(h, kPsi0, kB0, t, {m1}, {m1p}, {m2});
                Complex ratio = (a / b) / std::abs(a / b);
                worst_phase = std::max(worst_phase, std::abs(std::polar(1.0, -beta) - ratio));
            }
        }
    }
    o.detail << "max |Tr T^n - Tr rho_A^n| = " << worst_trace << ", bounds " << (bracketed ? "bracket" : "broken")
             << ", max phase error = " << worst_phase;
    o.require(worst_trace <= 1e-10, "transfer tolerance 1e-10");
    o.require(bracketed, "lower <= S(n) <= S(2)");
    o.require(worst_phase <= 1e-8, "phase tolerance 1e-8");
    return o;
}

Outcome criterion_7() {
    Outcome o;
    Hamiltonian h = four_qubit();
    double exact_worst = 0.0;
    exact_worst = std::max(exact_worst, std::abs(-std::log(echo_amplitudes(h, kPsi0, kB0, 0.0).total())));
    for (int n : {2, 3, 4}) {
        exact_worst = std::max(exact_worst, std::abs(nth_renyi_transfer(h, kPsi0, kB0, 0.0, n).value));
    }
    exact_worst = std::max(exact_worst, std::abs(verify_otoc_le(h, kPsi0, kB0, 0.0).lhs - 1.0));
    RenyiResult counted = renyi2_from_counts(run_protocol_31(h, kPsi0, kB0, 0.0, 20000, SeededRng(7)));
    exact_worst = std::max(exact_worst, std::abs(counted.value));

    RenyiResult ru = renyi2_random_unitary(h, kPsi0, kB0, 0.0, 100000, SeededRng(8));
    bool ru_ok = std::abs(ru.trace - 1.0) <= 3.0 * *ru.stderr_trace + 1e-12;
    RandomizedOptions opts;
    opts.n_unitaries = 10000;
    opts.region = RandomizedRegion::SubsystemA;
    ComplexMatrix rho0 = outer(product_state(h.bipartition(), kPsi0, kB0));
    RandomizedPurity rm = randomized_purity_no_reversal(h, rho0, 0.0, opts, SeededRng(9));
    bool rm_ok = std::abs(rm.purity_t - 1.0) <= 3.0 * rm.stderr_t;

    Hamiltonian free = build_tfim(3, 1.0, 1.05, Bipartition(2, 1), 0.0);
    double free_worst = 0.0;
    for (double t : kGrid) {
        free_worst = std::max(free_worst, std::abs(echo_amplitudes(free, kPsi0, kB0, t).total() - 1.0));
        free_worst = std::max(free_worst, std::abs(dense_trace_power(free, kPsi0, kB0, t, 2) - 1.0));
        free_worst = std::max(free_worst, std::abs(verify_otoc_le(free, kPsi0, kB0, t).lhs - 1.0));
        free_worst = std::max(free_worst, std::abs(nth_renyi_transfer(free, kPsi0, kB0, t, 3).trace - 1.0));
    }
    o.detail << "t=0 exact paths max |S| = " << exact_worst << ", random-unitary " << (ru_ok ? "ok" : "off")
             << ", randomized " << (rm_ok ? "ok" : "off") << ", non-interacting max |purity - 1| = " << free_worst;
    o.require(exact_worst <= 1e-10, "t=0 exact anchors");
    o.require(ru_ok && rm_ok, "t=0 sampled anchors");
    o.require(free_worst <= 1e-10, "non-interacting anchors");
    return o;
}

std::string slurp(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome criterion_8() {
    Outcome o;
    const std::string cli = PROJECHO_CLI_PATH;
    const std::string scenario = PROJECHO_SCENARIO_DIR "/fourqubit.scn";
    std::vector<std::string> outputs;
    for (int k = 0; k < 2; ++k) {
        std::string out =
            (std::filesystem::temp_directory_path() / ("projecho_determinism_" + std::to_string(k) + ".jsonl")).string();
        std::filesystem::remove(out);
        std::string cmd = "\"" + cli + "\" run \"" + scenario + "\" --threads " + std::to_string(1 + 3 * k) +
                          " --out \"" + out + "\"" + " 2>/dev/null";
        int rc = std::system(cmd.c_str());
        o.require(rc == 0, "CLI exit status");
        outputs.push_back(slurp(out));
    }
    bool same = !outputs[0].empty() && outputs[0] == outputs[1];
    o.detail << "two runs (1 and 4 threads) " << (same ? "bitwise identical" : "differ") << ", "
             << outputs[0].size() << " bytes";
    o.require(same, "bitwise identical output");
    return o;
}

Outcome criterion_9(double earlier_seconds) {
    Outcome o;
    auto start = Clock::now();
    Scenario s = load_scenario(PROJECHO_SCENARIO_DIR "/padic_chain.scn");
    s.protocols = {Protocol::Renyi2Exact, Protocol::Renyi2Protocol, Protocol::Renyi2RandomUnitary,
                   Protocol::RenyiN,      Protocol::OtocLe,         Protocol::Phase};
    std::vector<ResultRecord> records = run(s);
    double worst = 0.0;
    for (const auto &r : records) {
        for (const auto &[k, v] : r.extras) {
            if (k == "abs_diff" || k == "purity_abs_diff") {
                worst = std::max(worst, v);
            }
        }
    }
    double elapsed = seconds_since(start);
    double total = earlier_seconds + elapsed;
    o.detail << "n_a=6, n_b=2: " << records.size() << " records in " << elapsed << " s, all criteria " << total
             << " s, max identity error " << worst;
    o.require(worst <= 1e-10, "identities hold at scale");
    o.require(total < 300.0, "total < 5 min");
    return o;
}

}  // namespace

int main() {
    const char *names[] = {"RE-LE identity",
                           "protocol counting identity and coverage",
                           "random-unitary variant coverage",
                           "OTOC-LE relation",
                           "randomized measurement without time reversal",
                           "n-th Renyi transfer, bounds and phase",
                           "trivial anchors",
                           "CLI determinism",
                           "scale ceiling"};
    int failures = 0;
    auto start = Clock::now();
    auto report = [&](int k, const Outcome &o) {
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << k << " (" << names[k - 1]
                  << "): " << o.detail.str() << std::endl;
        failures += o.pass ? 0 : 1;
    };
    auto guarded = [&](int k, auto &&fn) {
        try {
            report(k, fn());
        } catch (const std::exception &e) {
            Outcome o;
            o.pass = false;
            o.detail << "error: " << e.what();
            report(k, o);
        }
    };
    guarded(1, criterion_1);
    guarded(2, criterion_2);
    guarded(3, criterion_3);
    guarded(4, criterion_4);
    guarded(5, criterion_5);
    guarded(6, criterion_6);
    guarded(7, criterion_7);
    guarded(8, criterion_8);
    double so_far = seconds_since(start);
    guarded(9, [&] { return criterion_9(so_far); });
    return failures == 0 ? 0 : 1;
}
