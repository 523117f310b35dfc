// Copyright 2026 The procmat authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PROCMAT_ERRORS_HPP
#define PROCMAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace procmat {

enum class ErrorKind {
    DuplicateLabel,
    UnknownLabel,
    DimensionMismatch,
    NotUnitary,
    LengthMismatch,
    TooManyParties,
    HasGlobalPast,
    NotTransparent,
    InvalidProcessFunction,
    UnknownScenario,
    WireMismatch,
    ScenarioMismatch,
    ConfigError,
    Internal,
};

/// Exception carrying a machine-checkable error kind next to the message.
class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &message) : std::runtime_error(message), kind_(kind) {}
    ErrorKind kind() const {
        return kind_;
    }

   private:
    ErrorKind kind_;
};

inline const char *error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::DuplicateLabel:
            return "DuplicateLabel";
        case ErrorKind::UnknownLabel:
            return "UnknownLabel";
        case ErrorKind::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorKind::NotUnitary:
            return "NotUnitary";
        case ErrorKind::LengthMismatch:
            return "LengthMismatch";
        case ErrorKind::TooManyParties:
            return "TooManyParties";
        case ErrorKind::HasGlobalPast:
            return "HasGlobalPast";
        case ErrorKind::NotTransparent:
            return "NotTransparent";
        case ErrorKind::InvalidProcessFunction:
            return "InvalidProcessFunction";
        case ErrorKind::UnknownScenario:
            return "UnknownScenario";
        case ErrorKind::WireMismatch:
            return "WireMismatch";
        case ErrorKind::ScenarioMismatch:
            return "ScenarioMismatch";
        case ErrorKind::ConfigError:
            return "ConfigError";
        case ErrorKind::Internal:
            return "Internal";
    }
    return "Unknown";
}

}  // namespace procmat

#endif
