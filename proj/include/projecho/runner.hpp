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

#ifndef PROJECHO_RUNNER_HPP
#define PROJECHO_RUNNER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "projecho/scenario.hpp"

namespace projecho {

/// One protocol evaluated at one grid time.
struct ResultRecord {
    std::uint64_t scenario_hash = 0;
    Protocol protocol = Protocol::Renyi2Exact;
    std::size_t time_index = 0;
    double t = 0.0;
    std::uint64_t seed = 0;
    /// What `estimate` and `oracle` measure, e.g. "S2" (nats) or "purity".
    std::string quantity;
    /// Absent when the quantity is undefined at this point (a phase between
    /// vanishing amplitudes).
    std::optional<double> estimate;
    std::optional<double> stderr_value;
    std::optional<double> oracle;
    std::vector<std::pair<std::string, double>> extras;
    std::vector<std::pair<std::string, std::uint64_t>> counts;
    std::optional<double> wall_seconds;

    /// (estimate - oracle) / stderr when all three are present.
    std::optional<double> discrepancy_sigma() const;
};

struct RunOptions {
    int threads = 1;
    /// Adds wall-clock seconds to every record (breaks bitwise determinism).
    bool timing = false;
};

/// Runs every protocol of the scenario over its time grid, protocol-major.
/// Protocol k at time index i draws from SeededRng(seed).derive(k).derive(i),
/// with k the protocol's position in the full protocol list. Errors carry
/// the protocol and time point that failed.
std::vector<ResultRecord> run(const Scenario &scenario, const RunOptions &options = {});

}  // namespace projecho

#endif
