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

#ifndef PROJECHO_PROJECHO_H
#define PROJECHO_PROJECHO_H

#include <stddef.h>
#include <stdint.h>

#if defined(PROJECHO_BUILDING_LIBRARY)
#define PE_API __attribute__((visibility("default")))
#else
#define PE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct pe_scenario pe_scenario;
typedef struct pe_result_set pe_result_set;
typedef struct pe_hamiltonian pe_hamiltonian;

// Status codes double as CLI exit codes.
typedef enum pe_status {
    PE_OK = 0,
    PE_ERR_SCENARIO = 1,
    PE_ERR_NUMERICAL = 2,
    PE_ERR_IO = 3,
    PE_ERR_INVALID_ARGUMENT = 4,
} pe_status;

// Message of the last failed call on this thread; "" if none.
PE_API const char *pe_last_error(void);
PE_API const char *pe_version(void);

// Strings returned through char** are owned by the caller.
PE_API void pe_string_free(char *s);

PE_API pe_status pe_scenario_parse(const char *text, pe_scenario **out);
PE_API pe_status pe_scenario_load(const char *path, pe_scenario **out);
PE_API void pe_scenario_free(pe_scenario *scenario);
PE_API pe_status pe_scenario_set_seed(pe_scenario *scenario, uint64_t seed);
PE_API pe_status pe_scenario_seed(const pe_scenario *scenario, uint64_t *seed);
// Output path from the scenario file; empty when unset.
PE_API pe_status pe_scenario_output(const pe_scenario *scenario, char **path);
PE_API pe_status pe_scenario_emit(const pe_scenario *scenario, char **text);

// timing != 0 adds wall-clock seconds to each record.
PE_API pe_status pe_run(const pe_scenario *scenario, int threads, int timing, pe_result_set **out);
PE_API void pe_result_set_free(pe_result_set *results);
PE_API size_t pe_result_count(const pe_result_set *results);
PE_API pe_status pe_result_jsonl(const pe_result_set *results, char **text);
PE_API pe_status pe_result_csv(const pe_result_set *results, char **text);
PE_API pe_status pe_result_summary(const pe_result_set *results, char **text);
// PE_OK when one JSONL line is a valid record; the violation is in pe_last_error().
PE_API pe_status pe_check_record(const char *line);

// Edge sites 0..n_b-1 form subsystem B.
PE_API pe_status pe_hamiltonian_tfim(int n_a, int n_b, double j, double h, double cross_scale,
                                     pe_hamiltonian **out);
PE_API pe_status pe_hamiltonian_padic(int n_a, int n_b, int p, double s, int periodic, double bath_coupling,
                                      pe_hamiltonian **out);
PE_API void pe_hamiltonian_free(pe_hamiltonian *h);
PE_API int pe_hamiltonian_dim_b(const pe_hamiltonian *h);

// psi0 and b0 are computational basis labels of A and B.
PE_API pe_status pe_purity_oracle(const pe_hamiltonian *h, uint64_t psi0, uint64_t b0, double t, double *purity);
// Fills D_B * D_B (re, im) pairs of T[m1][m2], row-major in m1; `len` counts doubles.
PE_API pe_status pe_echo_amplitudes(const pe_hamiltonian *h, uint64_t psi0, uint64_t b0, double t, double *out,
                                    size_t len);
PE_API pe_status pe_renyi_transfer(const pe_hamiltonian *h, uint64_t psi0, uint64_t b0, double t, int n,
                                   double *entropy);
PE_API pe_status pe_renyi2_protocol(const pe_hamiltonian *h, uint64_t psi0, uint64_t b0, double t, uint64_t n_cycle,
                                    uint64_t seed, int threads, double *entropy, double *stderr_entropy);
PE_API pe_status pe_otoc_le(const pe_hamiltonian *h, uint64_t psi0, uint64_t b0, double t, double *lhs,
                            double *rhs);

#ifdef __cplusplus
}
#endif

#endif
