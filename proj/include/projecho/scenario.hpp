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

#ifndef PROJECHO_SCENARIO_HPP
#define PROJECHO_SCENARIO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "projecho/entropy.hpp"
#include "projecho/models.hpp"

namespace projecho {

enum class Protocol {
    Loschmidt,
    Renyi2Exact,
    Renyi2Protocol,
    Renyi2RandomUnitary,
    Renyi2RandomizedMeasurement,
    RenyiN,
    OtocLe,
    Phase,
};

std::string_view to_string(Protocol protocol);
std::optional<Protocol> protocol_from_string(std::string_view name);

/// Batch description read from a flat `key = value` file. Bit strings list
/// qubit 0 first.
struct Scenario {
    std::string model = "tfim";
    int n_a = 0;
    int n_b = 0;
    std::vector<int> b_qubits;
    std::string psi0;
    std::string b0;

    double j = 1.0;
    double h = 1.05;
    double cross_coupling = 1.0;

    int p = 2;
    double s = 0.0;
    bool periodic = true;
    std::optional<double> bath_coupling;

    std::vector<double> times;
    std::vector<Protocol> protocols;

    std::uint64_t n_cycle = 20000;
    std::uint64_t n_total = 100000;
    std::uint64_t n_unitaries = 10000;
    std::uint64_t n_samples = 1000;
    std::uint64_t shots_per_u = 0;
    int renyi_n = 3;
    double perturbation = 0.1;
    RandomizedRegion rm_region = RandomizedRegion::Whole;
    std::uint64_t phase_m1 = 0;
    std::uint64_t phase_m1p = 1;
    std::uint64_t phase_m2 = 0;

    std::uint64_t seed = 0;
    std::string output;

    bool operator==(const Scenario &) const = default;

    Bipartition bipartition() const;
    std::uint64_t psi0_index() const;
    std::uint64_t b0_index() const;
};

/// Throws Error(Scenario) naming the line and key at fault.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string &path);

/// Canonical text; parse_scenario(emit_scenario(s)) == s.
std::string emit_scenario(const Scenario &scenario);

/// FNV-1a of the canonical text with seed and output path left out.
std::uint64_t scenario_hash(const Scenario &scenario);

Hamiltonian build_hamiltonian(const Scenario &scenario);

}  // namespace projecho

#endif
