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

#include "projecho/error.hpp"

namespace projecho {

void throw_invalid(const std::string &message) {
    throw Error(ErrorKind::InvalidArgument, message);
}

void throw_numerical(const std::string &message) {
    throw Error(ErrorKind::Numerical, message);
}

void throw_scenario(const std::string &message) {
    throw Error(ErrorKind::Scenario, message);
}

void throw_io(const std::string &message) {
    throw Error(ErrorKind::Io, message);
}

}  // namespace projecho
