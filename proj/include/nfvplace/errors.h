// Copyright 2026 The nfvplace Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NFVPLACE_ERRORS_H_
#define NFVPLACE_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nfvplace {

// Root of every error thrown by the library. `kind()` is a stable short name
// used in CSV status columns and CLI messages.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define NFVPLACE_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& what) : Error(#Name, what) {}   \
  }

NFVPLACE_DEFINE_ERROR(UnknownId);
NFVPLACE_DEFINE_ERROR(ValidationError);
NFVPLACE_DEFINE_ERROR(UnreachablePair);
NFVPLACE_DEFINE_ERROR(InvalidRange);
NFVPLACE_DEFINE_ERROR(NumericalFailure);
NFVPLACE_DEFINE_ERROR(IndexOutOfRange);
NFVPLACE_DEFINE_ERROR(InvalidRates);
NFVPLACE_DEFINE_ERROR(DegenerateInstance);
NFVPLACE_DEFINE_ERROR(ZTooSmall);
NFVPLACE_DEFINE_ERROR(TooLarge);
NFVPLACE_DEFINE_ERROR(ConfigError);

#undef NFVPLACE_DEFINE_ERROR

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : Error("ParseError", "line " + std::to_string(line) + ": " + reason),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace nfvplace

#endif  // NFVPLACE_ERRORS_H_
