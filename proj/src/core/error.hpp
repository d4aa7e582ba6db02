// ----------------------------------------------------------------------------
// Copyright 2026 The ssdr Authors
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
// ----------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace ssdr {

// Base of every error raised by the library. The C API maps each subclass
// onto a status code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A documented precondition was violated by the caller.
class ContractViolation : public Error {
public:
    using Error::Error;
};

// Inconsistent configuration: shape mismatches, bad option values.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Malformed file contents.
class ParseError : public Error {
public:
    using Error::Error;
};

// Missing or unreadable files, failed writes.
class IoError : public Error {
public:
    using Error::Error;
};

// Invalid scene data (G-buffer invariants, dimension mismatches).
class ValidationError : public Error {
public:
    using Error::Error;
};

// NaN/Inf produced during a computation.
class NumericalError : public Error {
public:
    using Error::Error;
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw ContractViolation(what);
}

}  // namespace ssdr
