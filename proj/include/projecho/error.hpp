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

#ifndef PROJECHO_ERROR_HPP
#define PROJECHO_ERROR_HPP

#include <stdexcept>
#include <string>

namespace projecho {

/// Broad failure classes. They map one-to-one onto CLI exit codes and C API
/// status codes.
enum class ErrorKind {
    InvalidArgument,  ///< Caller violated a precondition (dims, labels, ...).
    Scenario,         ///< Scenario text failed to parse or validate.
    Numerical,        ///< A computation produced an undefined or inconsistent value.
    Io,               ///< File system failure.
};

class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &message) : std::runtime_error(message), kind_(kind) {
    }
    ErrorKind kind() const noexcept {
        return kind_;
    }

   private:
    ErrorKind kind_;
};

[[noreturn]] void throw_invalid(const std::string &message);
[[noreturn]] void throw_numerical(const std::string &message);
[[noreturn]] void throw_scenario(const std::string &message);
[[noreturn]] void throw_io(const std::string &message);

}  // namespace projecho

#endif
