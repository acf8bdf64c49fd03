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

#ifndef PROJECHO_REPORT_HPP
#define PROJECHO_REPORT_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "projecho/runner.hpp"

namespace projecho {

/// One JSON object per line, keys in a fixed order.
std::string to_jsonl(std::span<const ResultRecord> records);

/// protocol,time_index,t,seed,quantity,estimate,stderr,oracle,discrepancy_sigma
std::string to_csv(std::span<const ResultRecord> records);

/// Text tables grouped by protocol. Throws on an empty record set.
std::string summarize(std::span<const ResultRecord> records);

/// Returns a description of the first schema violation in one JSONL line,
/// or nullopt when the line is a valid record.
std::optional<std::string> check_record_schema(std::string_view line);

}  // namespace projecho

#endif
