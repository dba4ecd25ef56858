// Copyright 2026 The Treehom Authors
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

#ifndef TREEHOM_ERRORS_HPP_
#define TREEHOM_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace treehom {

// Root of every error the library throws on a contract violation.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// An exhaustive routine was asked to work beyond its hard size guard.
class SizeLimitExceeded : public Error {
 public:
  using Error::Error;
};

class EmptyStructure : public Error {
 public:
  EmptyStructure() : Error("structure has no nodes") {}
};

// Carries the stalled residual component: a connected node set without a
// central point, which certifies that no homomorphism exists.
class NoHomomorphism : public Error {
 public:
  explicit NoHomomorphism(std::vector<std::size_t> certificate)
      : Error("no homomorphism into an ordinal tree exists"),
        certificate_(std::move(certificate)) {}
  const std::vector<std::size_t>& certificate() const { return certificate_; }

 private:
  std::vector<std::size_t> certificate_;
};

class NotSemilinear : public Error {
 public:
  using Error::Error;
};

class EmptyWord : public Error {
 public:
  EmptyWord() : Error("operation needs a non-empty word") {}
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

class NotExhausted : public Error {
 public:
  NotExhausted() : Error("fixpoint does not exhaust the structure") {}
};

class UnknownLabel : public Error {
 public:
  explicit UnknownLabel(const std::string& label)
      : Error("unknown node label '" + label + "'") {}
};

class GameOver : public Error {
 public:
  GameOver() : Error("no rounds left") {}
};

class GameNotOver : public Error {
 public:
  GameNotOver() : Error("game is not over yet") {}
};

class IllegalMove : public Error {
 public:
  using Error::Error;
};

class NotLocallyWinning : public Error {
 public:
  using Error::Error;
};

class InsufficientFreshComponents : public Error {
 public:
  InsufficientFreshComponents(const std::string& what, std::size_t needed_multiplicity)
      : Error(what + " (multiplicity needed: " + std::to_string(needed_multiplicity) + ")"),
        needed_multiplicity_(needed_multiplicity) {}
  std::size_t needed_multiplicity() const { return needed_multiplicity_; }

 private:
  std::size_t needed_multiplicity_;
};

}  // namespace treehom

#endif  // TREEHOM_ERRORS_HPP_
