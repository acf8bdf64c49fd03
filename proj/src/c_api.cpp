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

#include "projecho/projecho.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "projecho/echo.hpp"
#include "projecho/entropy.hpp"
#include "projecho/error.hpp"
#include "projecho/otoc.hpp"
#include "projecho/report.hpp"
#include "projecho/runner.hpp"
#include "projecho/scenario.hpp"

struct pe_scenario {
    projecho::Scenario value;
};

struct pe_result_set {
    std::vector<projecho::ResultRecord> records;
};

struct pe_hamiltonian {
    projecho::Hamiltonian value;
};

namespace {

thread_local std::string g_last_error;

pe_status fail(pe_status status, const std::string &message) {
    g_last_error = message;
    return status;
}

template <class F>
pe_status guarded(F &&body) {
    g_last_error.clear();
    try {
        body();
        return PE_OK;
    } catch (const projecho::Error &e) {
        switch (e.kind()) {
            case projecho::ErrorKind::Scenario:
                return fail(PE_ERR_SCENARIO, e.what());
            case projecho::ErrorKind::Numerical:
                return fail(PE_ERR_NUMERICAL, e.what());
            case projecho::ErrorKind::Io:
                return fail(PE_ERR_IO, e.what());
            case projecho::ErrorKind::InvalidArgument:
                return fail(PE_ERR_INVALID_ARGUMENT, e.what());
        }
        return fail(PE_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::bad_alloc &) {
        return fail(PE_ERR_NUMERICAL, "out of memory");
    } catch (const std::exception &e) {
        return fail(PE_ERR_INVALID_ARGUMENT, e.what());
    }
}

char *copy_string(const std::string &s) {
    char *out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void require(const void *p, const char *what) {
    if (p == nullptr) {
        projecho::throw_invalid(std::string(what) + " is null");
    }
}

struct States {
    projecho::StateVector psi0;
    projecho::StateVector b0;
};

States basis_states(const pe_hamiltonian *h, std::uint64_t psi0, std::uint64_t b0) {
    require(h, "hamiltonian");
    const auto &bip = h->value.bipartition();
    if (psi0 >= bip.dim_a() || b0 >= bip.dim_b()) {
        projecho::throw_invalid("basis label out of range");
    }
    return {projecho::StateVector::basis(bip.n_a(), psi0), projecho::StateVector::basis(bip.n_b(), b0)};
}

}  // namespace

extern "C" {

const char *pe_last_error(void) {
    return g_last_error.c_str();
}

const char *pe_version(void) {
    return "0.1.0";
}

void pe_string_free(char *s) {
    delete[] s;
}

pe_status pe_scenario_parse(const char *text, pe_scenario **out) {
    return guarded([&] {
        require(text, "text");
        require(out, "out");
        *out = new pe_scenario{projecho::parse_scenario(text)};
    });
}

pe_status pe_scenario_load(const char *path, pe_scenario **out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = new pe_scenario{projecho::load_scenario(path)};
    });
}

void pe_scenario_free(pe_scenario *scenario) {
    delete scenario;
}

pe_status pe_scenario_set_seed(pe_scenario *scenario, uint64_t seed) {
    return guarded([&] {
        require(scenario, "scenario");
        scenario->value.seed = seed;
    });
}

pe_status pe_scenario_seed(const pe_scenario *scenario, uint64_t *seed) {
    return guarded([&] {
        require(scenario, "scenario");
        require(seed, "seed");
        *seed = scenario->value.seed;
    });
}

pe_status pe_scenario_output(const pe_scenario *scenario, char **path) {
    return guarded([&] {
        require(scenario, "scenario");
        require(path, "path");
        *path = copy_string(scenario->value.output);
    });
}

pe_status pe_scenario_emit(const pe_scenario *scenario, char **text) {
    return guarded([&] {
        require(scenario, "scenario");
        require(text, "text");
        *text = copy_string(projecho::emit_scenario(scenario->value));
    });
}

pe_status pe_run(const pe_scenario *scenario, int threads, int timing, pe_result_set **out) {
    return guarded([&] {
        require(scenario, "scenario");
        require(out, "out");
        projecho::RunOptions opts;
        opts.threads = threads < 1 ? 1 : threads;
        opts.timing = timing != 0;
        *out = new pe_result_set{projecho::run(scenario->value, opts)};
    });
}

void pe_result_set_free(pe_result_set *results) {
    delete results;
}

size_t pe_result_count(const pe_result_set *results) {
    return results ? results->records.size() : 0;
}

pe_status pe_result_jsonl(const pe_result_set *results, char **text) {
    return guarded([&] {
        require(results, "results");
        require(text, "text");
        *text = copy_string(projecho::to_jsonl(results->records));
    });
}

pe_status pe_result_csv(const pe_result_set *results, char **text) {
    return guarded([&] {
        require(results, "results");
        require(text, "text");
        *text = copy_string(projecho::to_csv(results->records));
    });
}

pe_status pe_result_summary(const pe_result_set *results, char **text) {
    return guarded([&] {
        require(results, "results");
        require(text, "text");
        *text = copy_string(projecho::summarize(results->records));
    });
}

pe_status pe_check_record(const char *line) {
    return guarded([&] {
        require(line, "line");
        if (auto err = projecho::check_record_schema(line)) {
            projecho::throw_invalid(*err);
        }
    });
}

pe_status pe_hamiltonian_tfim(int n_a, int n_b, double j, double h, double cross_scale, pe_hamiltonian **out) {
    return guarded([&] {
        require(out, "out");
        projecho::Bipartition bip(n_a, n_b);
        *out = new pe_hamiltonian{projecho::build_tfim(n_a + n_b, j, h, bip, cross_scale)};
    });
}

pe_status pe_hamiltonian_padic(int n_a, int n_b, int p, double s, int periodic, double bath_coupling,
                               pe_hamiltonian **out) {
    return guarded([&] {
        require(out, "out");
        projecho::Bipartition bip(n_a, n_b);
        auto chi = projecho::padic_with_bath(p, s, periodic != 0, bip, bath_coupling);
        *out = new pe_hamiltonian{projecho::build_padic_xy(chi, bip)};
    });
}

void pe_hamiltonian_free(pe_hamiltonian *h) {
    delete h;
}

int pe_hamiltonian_dim_b(const pe_hamiltonian *h) {
    return h ? static_cast<int>(h->value.bipartition().dim_b()) : 0;
}

pe_status pe_purity_oracle(const pe_hamiltonian *h, uint64_t psi0, uint64_t b0, double t, double *purity) {
    return guarded([&] {
        require(purity, "purity");
        States s = basis_states(h, psi0, b0);
        *purity = projecho::purity_oracle(h->value, s.psi0, s.b0, t);
    });
}

pe_status pe_echo_amplitudes(const pe_hamiltonian *h, uint64_t psi0, uint64_t b0, double t, double *out,
                             size_t len) {
    return guarded([&] {
        require(out, "out");
        States s = basis_states(h, psi0, b0);
        const auto db = static_cast<size_t>(h->value.bipartition().dim_b());
        if (len < 2 * db * db) {
            projecho::throw_invalid("output buffer needs " + std::to_string(2 * db * db) + " doubles");
        }
        auto echo = projecho::echo_amplitudes(h->value, s.psi0, s.b0, t);
        for (size_t m1 = 0; m1 < db; ++m1) {
            for (size_t m2 = 0; m2 < db; ++m2) {
                auto v = echo.amplitude({m1}, {m2});
                out[2 * (m1 * db + m2)] = v.real();
                out[2 * (m1 * db + m2) + 1] = v.imag();
            }
        }
    });
}

pe_status pe_renyi_transfer(const pe_hamiltonian *h, uint64_t psi0, uint64_t b0, double t, int n, double *entropy) {
    return guarded([&] {
        require(entropy, "entropy");
        States s = basis_states(h, psi0, b0);
        *entropy = projecho::nth_renyi_transfer(h->value, s.psi0, s.b0, t, n).value;
    });
}

pe_status pe_renyi2_protocol(const pe_hamiltonian *h, uint64_t psi0, uint64_t b0, double t, uint64_t n_cycle,
                             uint64_t seed, int threads, double *entropy, double *stderr_entropy) {
    return guarded([&] {
        require(entropy, "entropy");
        States s = basis_states(h, psi0, b0);
        projecho::ProtocolOptions opts;
        opts.threads = threads < 1 ? 1 : threads;
        auto counts = projecho::run_protocol_31(h->value, s.psi0, s.b0, t, n_cycle, projecho::SeededRng(seed), opts);
        auto r = projecho::renyi2_from_counts(counts);
        *entropy = r.value;
        if (stderr_entropy) {
            *stderr_entropy = r.stderr_value.value_or(0.0);
        }
    });
}

pe_status pe_otoc_le(const pe_hamiltonian *h, uint64_t psi0, uint64_t b0, double t, double *lhs, double *rhs) {
    return guarded([&] {
        require(lhs, "lhs");
        require(rhs, "rhs");
        States s = basis_states(h, psi0, b0);
        auto report = projecho::verify_otoc_le(h->value, s.psi0, s.b0, t);
        *lhs = report.lhs;
        *rhs = report.rhs;
    });
}

}  // extern "C"
