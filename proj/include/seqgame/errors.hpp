// Copyright 2026 The seqgame Authors
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

#ifndef SEQGAME_ERRORS_HPP_
#define SEQGAME_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace seqgame {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Invalid sequence-form data handed to an operation that requires a valid game.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// (E, e) does not describe a tree: cyclic or disconnected parent relation.
class StructureError : public Error {
 public:
  using Error::Error;
};

// Extensive-form game cannot be compiled (bad probabilities, imperfect recall).
class CompileError : public Error {
 public:
  using Error::Error;
};

// Well-formed JSON that does not follow the expected schema.
class FormatError : public Error {
 public:
  using Error::Error;
};

class SizeError : public Error {
 public:
  using Error::Error;
};

class StrategyError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Power iteration did not reach the requested tolerance.
class InitializationError : public Error {
 public:
  using Error::Error;
};

class DivergenceError : public Error {
 public:
  DivergenceError(std::size_t iteration, const std::string& what)
      : Error("numerical divergence at iteration " +
              std::to_string(iteration) + ": " + what),
        iteration_(iteration) {}

  std::size_t iteration() const { return iteration_; }

 private:
  std::size_t iteration_;
};

}  // namespace seqgame

#endif  // SEQGAME_ERRORS_HPP_
