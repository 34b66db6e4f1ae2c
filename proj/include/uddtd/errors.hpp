// Copyright 2026 The uddtd Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace uddtd {

// Violated precondition: bad sizes, empty sequences, parallel axes, etc.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A scaling sweep produced too few samples inside the asymptotic fit window.
class NoAsymptoticWindow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Step refinement or quadrature failed to converge, or a numerical
// self-check (Hermiticity, unitarity, vanishing assertion) failed.
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  explicit NumericalFailure(const std::string& what)
      : NumericalFailure(what, 0.0) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace uddtd
