// Copyright 2026 The qnet-energy Authors
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

#ifndef QNET_ERROR_HPP
#define QNET_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qnet {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input file. `line` is 1-based, 0 when unknown.
struct ParseError : Error {
    size_t line;
    ParseError(const std::string &msg, size_t line = 0)
        : Error(line ? msg + " (line " + std::to_string(line) + ")" : msg), line(line) {
    }
};

struct ValidationError : Error {
    size_t line;
    ValidationError(const std::string &msg, size_t line = 0)
        : Error(line ? msg + " (line " + std::to_string(line) + ")" : msg), line(line) {
    }
};

/// Argument outside the mathematical domain of a function.
struct DomainError : Error {
    using Error::Error;
};

/// Intermediate quantity left its valid range (negative radicand, unphysical eigenvalue).
struct NumericalDomainError : Error {
    using Error::Error;
};

/// The key rate is zero so the target can never be reached.
struct InfeasibleError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace qnet

#endif
