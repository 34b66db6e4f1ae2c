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

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace uddtd {

// Axis of an instantaneous pi rotation in spin space.
enum class PulseAxis { X, Y, Z };

char axis_name(PulseAxis axis);
PulseAxis parse_axis(std::string_view name);

struct Pulse {
  double instant;  // relative time in (0, 1)
  PulseAxis axis;

  friend bool operator==(const Pulse&, const Pulse&) = default;
};

/// An ideal pulse sequence: instants are relative to the total duration, so
/// the same sequence can be stretched to any length without changing shape.
class PulseSequence {
 public:
  PulseSequence() = default;
  // Throws InvalidArgument unless instants are strictly increasing in (0, 1)
  // and duration > 0.
  explicit PulseSequence(std::vector<Pulse> pulses, double duration = 1.0);

  const std::vector<Pulse>& pulses() const noexcept { return pulses_; }
  std::size_t size() const noexcept { return pulses_.size(); }
  bool empty() const noexcept { return pulses_.empty(); }
  double duration() const noexcept { return duration_; }

  std::vector<double> instants() const;
  // Same relative instants, new total duration.
  PulseSequence rescaled(double duration) const;

  // Pulses about one axis only, if the sequence uses a single axis.
  std::optional<PulseAxis> single_axis() const;

  friend bool operator==(const PulseSequence&, const PulseSequence&) = default;

 private:
  std::vector<Pulse> pulses_;
  double duration_ = 1.0;
};

// Piecewise-constant +-1 signal on [0, 1]; the sign flips at each breakpoint.
class SwitchingFunction {
 public:
  SwitchingFunction() = default;
  explicit SwitchingFunction(std::vector<double> breakpoints,
                             int initial_sign = +1);

  const std::vector<double>& breakpoints() const noexcept {
    return breakpoints_;
  }
  int initial_sign() const noexcept { return initial_sign_; }

  // initial_sign * (-1)^{#breakpoints <= t}
  int operator()(double t) const;
  // Sign on the k-th interval between consecutive breakpoints (k = 0..size).
  int sign_on_interval(std::size_t k) const noexcept {
    return (k % 2 == 0) ? initial_sign_ : -initial_sign_;
  }
  SwitchingFunction negated() const {
    return SwitchingFunction(breakpoints_, -initial_sign_);
  }

 private:
  std::vector<double> breakpoints_;
  int initial_sign_ = +1;
};

// sin^2(j pi / (2N + 2)) for j = 1..N. Throws InvalidArgument for N = 0.
std::vector<double> udd_times(int n);

PulseSequence udd_sequence(int n, PulseAxis axis, double duration = 1.0);

// Sign of a coupling operator along `coupling_axis` in the toggling frame.
// Every pulse must be perpendicular to the coupling axis.
SwitchingFunction switching_function(const PulseSequence& seq,
                                     PulseAxis coupling_axis);

/// Nested UDD: `n_outer` pulses about `outer_axis` at UDD instants, and inside
/// each of the `n_outer + 1` outer intervals an `n_inner` UDD sequence about
/// `inner_axis`. At an outer instant the inner interval completes first; UDD
/// inner instants are strictly interior, so no two pulses coincide.
PulseSequence qdd_sequence(int n_outer, int n_inner, PulseAxis outer_axis,
                           PulseAxis inner_axis, double duration = 1.0);

// {"duration": T, "pulses": [{"t": t, "axis": "X"}, ...]}
nlohmann::json to_json(const PulseSequence& seq);
PulseSequence sequence_from_json(const nlohmann::json& j);

}  // namespace uddtd
