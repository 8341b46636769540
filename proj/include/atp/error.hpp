// Copyright 2026 The ATP Authors.
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

#ifndef ATP_ERROR_HPP_
#define ATP_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace atp {

// Base of every error the library raises. The CLI maps subclasses onto exit
// codes, so new failure kinds should derive from one of the classes below.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input text could not be parsed. Carries the offending 1-based line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class InvalidStateError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// Operation refused because the input exceeds a supported size or a required
// quantity is unavailable.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

// A CLI stage found its upstream artifact missing or produced under a
// different configuration.
class DependencyError : public Error {
 public:
  using Error::Error;
};

// verify_bound found an empirical distance above the analytic bound.
class BoundViolation : public Error {
 public:
  BoundViolation(const std::string& what, std::size_t node, int hop)
      : Error(what), node_(node), hop_(hop) {}
  std::size_t node() const { return node_; }
  int hop() const { return hop_; }

 private:
  std::size_t node_;
  int hop_;
};

}  // namespace atp

#endif  // ATP_ERROR_HPP_
