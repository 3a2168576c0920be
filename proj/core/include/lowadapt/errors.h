// Copyright 2026 The lowadapt Authors.
//
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

#ifndef LOWADAPT_ERRORS_H_
#define LOWADAPT_ERRORS_H_

#include <stdexcept>
#include <string>

namespace lowadapt {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A query referenced an element id outside the ground set.
class MalformedQueryError : public Error {
 public:
  using Error::Error;
};

// Misuse of the fork/join ledger: zero-branch fork, double join, dead ledger.
class LedgerError : public Error {
 public:
  using Error::Error;
};

// A documented precondition of an operation does not hold.
class ContractError : public Error {
 public:
  using Error::Error;
};

// An objective returned NaN or infinity.
class NumericError : public Error {
 public:
  using Error::Error;
};

// A per-run guarantee (feasibility, round ceiling) was violated.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

// Nothing left to optimize over.
class EmptyInstanceError : public Error {
 public:
  using Error::Error;
};

// The request is too large to serve (exhaustive enumeration cap).
class CapacityError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& source, long line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what),
        line_(line) {}

  long line() const { return line_; }

 private:
  long line_;
};

}  // namespace lowadapt

#endif  // LOWADAPT_ERRORS_H_
