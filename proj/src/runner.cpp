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

#include "projecho/runner.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "projecho/echo.hpp"
#include "projecho/entropy.hpp"
#include "projecho/error.hpp"
#include "projecho/otoc.hpp"
#include "projecho/tripartite.hpp"

namespace projecho {

namespace {

constexpr double kPhaseFloor = 1e-12;

struct Context {
    const Scenario &scenario;
    const RunOptions &options;
    const Hamiltonian &h;
    StateVector psi0;
    StateVector b0;
};

void fill_renyi(ResultRecord &rec, const RenyiResult &r) {
    rec.estimate = r.value;
    rec.stderr_value = r.stderr_value;
    rec.extras.emplace_back("trace", r.trace);
    if (r.stderr_trace) {
        rec.extras.emplace_back("trace_stderr", *r.stderr_trace);
    }
}

double s2_of(double purity) {
    return -std::log(purity) + 0.0;
}

void loschmidt(const Context &c, ResultRecord &rec, double t) {
    const Bipartition &bip = c.h.bipartition();
    ComplexMatrix v = ComplexMatrix::Zero(c.h.dim(), c.h.dim());
    for (int q = 0; q < bip.num_qubits(); ++q) {
        v += pauli_operator(bip.num_qubits(), {{q, 'z'}});
    }
    Hamiltonian h2 = build_perturbed(c.h, Hamiltonian(v * c.scenario.perturbation, bip, "perturbation"));
    rec.quantity = "loschmidt-echo";
    rec.estimate = classic_le(c.h, h2, product_state(bip, c.psi0, c.b0), t);
}

void renyi2_exact(const Context &c, ResultRecord &rec, double t) {
    EchoAmplitudeMatrix echo = echo_amplitudes(c.h, c.psi0, c.b0, t);
    double oracle = purity_oracle(c.h, c.psi0, c.b0, t);
    rec.quantity = "S2";
    fill_renyi(rec, RenyiResult::from_trace(2, echo.total(), RenyiMethod::ProjectedLe));
    rec.oracle = s2_of(oracle);
    rec.extras.emplace_back("purity_oracle", oracle);
    rec.extras.emplace_back("purity_abs_diff", std::abs(echo.total() - oracle));
}

void renyi2_protocol(const Context &c, ResultRecord &rec, double t, const SeededRng &rng) {
    ShotCounts counts =
        run_protocol_31(c.h, c.psi0, c.b0, t, c.scenario.n_cycle, rng, {true, c.options.threads});
    rec.quantity = "S2";
    fill_renyi(rec, renyi2_from_counts(counts));
    rec.oracle = s2_of(purity_oracle(c.h, c.psi0, c.b0, t));
    std::uint64_t pairs = 0;
    for (auto n : counts.n_pair) {
        pairs += n;
    }
    rec.counts = {{"n_cycle", counts.n_cycle},
                  {"n_not", counts.n_not},
                  {"n_pair_total", pairs},
                  {"measured_qubits", counts.measured_qubits},
                  {"counting_identity", counts.satisfies_counting_identity() ? 1u : 0u}};
}

void renyi2_random_unitary(const Context &c, ResultRecord &rec, double t, const SeededRng &rng) {
    RenyiResult r = renyi2_random_unitary(c.h, c.psi0, c.b0, t, c.scenario.n_total, rng, c.options.threads);
    rec.quantity = "S2";
    fill_renyi(rec, r);
    rec.oracle = s2_of(purity_oracle(c.h, c.psi0, c.b0, t));
    rec.counts = {{"n_total", r.rounds}, {"n_not", r.failures}};
}

void renyi2_randomized(const Context &c, ResultRecord &rec, double t, const SeededRng &rng) {
    const Bipartition &bip = c.h.bipartition();
    ComplexMatrix rho0 = outer(product_state(bip, c.psi0, c.b0));
    RandomizedOptions opts;
    opts.n_unitaries = c.scenario.n_unitaries;
    opts.shots_per_u = c.scenario.shots_per_u;
    opts.region = c.scenario.rm_region;
    opts.threads = c.options.threads;
    RandomizedPurity out = randomized_purity_no_reversal(c.h, rho0, t, opts, rng);
    rec.quantity = "S2";
    fill_renyi(rec, RenyiResult::from_trace(2, out.purity_t, RenyiMethod::Randomized2Design, out.stderr_t));
    double oracle;
    if (c.scenario.rm_region == RandomizedRegion::Whole) {
        ComplexMatrix u = c.h.propagator(t);
        oracle = purity(u * rho0 * u.adjoint());
    } else {
        oracle = purity_oracle(c.h, c.psi0, c.b0, t);
    }
    rec.oracle = s2_of(oracle);
    rec.extras.emplace_back("purity_0", out.purity_0);
    rec.extras.emplace_back("purity_0_stderr", out.stderr_0);
    rec.extras.emplace_back("rejected_root", out.rejected_root);
    rec.counts = {{"n_unitaries", out.n_unitaries}, {"shots_per_u", c.scenario.shots_per_u}};
}

void renyi_n(const Context &c, ResultRecord &rec, double t) {
    const int n = c.scenario.renyi_n;
    EchoAmplitudeMatrix echo = echo_amplitudes(c.h, c.psi0, c.b0, t);
    RenyiResult r = nth_renyi_transfer(echo, n);
    RenyiBounds bounds = nth_renyi_bounds(echo, n);
    rec.quantity = "S" + std::to_string(n);
    fill_renyi(rec, r);
    rec.oracle = std::log(renyi_trace_oracle(c.h, c.psi0, c.b0, t, n)) / (1.0 - n);
    rec.extras.emplace_back("lower_bound", bounds.lower);
    rec.extras.emplace_back("upper_bound", bounds.upper);
}

void otoc_le(const Context &c, ResultRecord &rec, double t, const SeededRng &rng) {
    OtocLeReport report = verify_otoc_le(c.h, c.psi0, c.b0, t);
    OtocAverageOptions opts;
    opts.mode = TwirlMode::MonteCarlo;
    opts.n_samples = c.scenario.n_samples;
    opts.threads = c.options.threads;
    AveragedOtoc mc = averaged_otoc(c.h, otoc_weight(c.psi0, c.b0, c.h.bipartition()), t, opts, rng);
    rec.quantity = "purity";
    rec.estimate = report.lhs;
    rec.oracle = report.rhs;
    rec.extras.emplace_back("abs_diff", report.discrepancy);
    rec.extras.emplace_back("mc_value", mc.value);
    rec.extras.emplace_back("mc_stderr", *mc.stderr_value);
    rec.counts = {{"n_samples", mc.n_samples}};
}

void phase(const Context &c, ResultRecord &rec, double t) {
    const Scenario &s = c.scenario;
    EchoAmplitudeMatrix echo = echo_amplitudes(c.h, c.psi0, c.b0, t);
    Complex a = echo.amplitude({s.phase_m1}, {s.phase_m2});
    Complex b = echo.amplitude({s.phase_m1p}, {s.phase_m2});
    rec.quantity = "phase";
    rec.extras.emplace_back("echo_m1", std::norm(a));
    rec.extras.emplace_back("echo_m1p", std::norm(b));
    if (std::norm(a) < kPhaseFloor || std::norm(b) < kPhaseFloor) {
        return;
    }
    double oracle = std::fmod(-std::arg(a / b) + 2.0 * std::numbers::pi, 2.0 * std::numbers::pi);
    double beta = recover_phase(c.h, c.psi0, c.b0, t, {s.phase_m1}, {s.phase_m1p}, {s.phase_m2});
    rec.estimate = beta;
    rec.oracle = oracle;
    rec.extras.emplace_back("angle_error", std::abs(std::remainder(beta - oracle, 2.0 * std::numbers::pi)));
}

std::string format_t(double t) {
    std::ostringstream out;
    out.precision(17);
    out << t;
    return out.str();
}

}  // namespace

std::optional<double> ResultRecord::discrepancy_sigma() const {
    if (!estimate || !oracle || !stderr_value || !(*stderr_value > 0.0)) {
        return std::nullopt;
    }
    return (*estimate - *oracle) / *stderr_value;
}

std::vector<ResultRecord> run(const Scenario &scenario, const RunOptions &options) {
    Hamiltonian h = build_hamiltonian(scenario);
    Context c{scenario, options, h, StateVector::basis(scenario.n_a, scenario.psi0_index()),
              StateVector::basis(scenario.n_b, scenario.b0_index())};
    const std::uint64_t hash = scenario_hash(scenario);
    const SeededRng root(scenario.seed);
    std::vector<ResultRecord> records;
    for (std::size_t k = 0; k < scenario.protocols.size(); ++k) {
        const Protocol protocol = scenario.protocols[k];
        for (std::size_t i = 0; i < scenario.times.size(); ++i) {
            const double t = scenario.times[i];
            const SeededRng rng = root.derive(k).derive(i);
            ResultRecord rec;
            rec.scenario_hash = hash;
            rec.protocol = protocol;
            rec.time_index = i;
            rec.t = t;
            rec.seed = scenario.seed;
            auto start = std::chrono::steady_clock::now();
            try {
                switch (protocol) {
                    case Protocol::Loschmidt:
                        loschmidt(c, rec, t);
                        break;
                    case Protocol::Renyi2Exact:
                        renyi2_exact(c, rec, t);
                        break;
                    case Protocol::Renyi2Protocol:
                        renyi2_protocol(c, rec, t, rng);
                        break;
                    case Protocol::Renyi2RandomUnitary:
                        renyi2_random_unitary(c, rec, t, rng);
                        break;
                    case Protocol::Renyi2RandomizedMeasurement:
                        renyi2_randomized(c, rec, t, rng);
                        break;
                    case Protocol::RenyiN:
                        renyi_n(c, rec, t);
                        break;
                    case Protocol::OtocLe:
                        otoc_le(c, rec, t, rng);
                        break;
                    case Protocol::Phase:
                        phase(c, rec, t);
                        break;
                }
            } catch (const Error &e) {
                throw Error(e.kind(), std::string(to_string(protocol)) + " failed at t=" + format_t(t) +
                                          " (time index " + std::to_string(i) + "): " + e.what());
            }
            if (options.timing) {
                rec.wall_seconds =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            }
            records.push_back(std::move(rec));
        }
    }
    return records;
}

}  // namespace projecho
