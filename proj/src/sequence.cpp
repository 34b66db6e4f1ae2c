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

#include "uddtd/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "uddtd/errors.hpp"

namespace uddtd {

char axis_name(PulseAxis axis) {
  switch (axis) {
    case PulseAxis::X: return 'X';
    case PulseAxis::Y: return 'Y';
    case PulseAxis::Z: return 'Z';
  }
  return '?';
}

PulseAxis parse_axis(std::string_view name) {
  if (name == "X" || name == "x") return PulseAxis::X;
  if (name == "Y" || name == "y") return PulseAxis::Y;
  if (name == "Z" || name == "z") return PulseAxis::Z;
  throw InvalidArgument("unknown pulse axis '" + std::string(name) + "'");
}

PulseSequence::PulseSequence(std::vector<Pulse> pulses, double duration)
    : pulses_(std::move(pulses)), duration_(duration) {
  if (!(duration_ > 0.0) || !std::isfinite(duration_)) {
    throw InvalidArgument("sequence duration must be positive");
  }
  double prev = 0.0;
  for (const Pulse& p : pulses_) {
    if (!(p.instant > prev) || !(p.instant < 1.0)) {
      throw InvalidArgument(
          "pulse instants must be strictly increasing inside (0, 1)");
    }
    prev = p.instant;
  }
}

std::vector<double> PulseSequence::instants() const {
  std::vector<double> out;
  out.reserve(pulses_.size());
  for (const Pulse& p : pulses_) out.push_back(p.instant);
  return out;
}

PulseSequence PulseSequence::rescaled(double duration) const {
  return PulseSequence(pulses_, duration);
}

std::optional<PulseAxis> PulseSequence::single_axis() const {
  if (pulses_.empty()) return std::nullopt;
  const PulseAxis a = pulses_.front().axis;
  for (const Pulse& p : pulses_) {
    if (p.axis != a) return std::nullopt;
  }
  return a;
}

SwitchingFunction::SwitchingFunction(std::vector<double> breakpoints,
                                     int initial_sign)
    : breakpoints_(std::move(breakpoints)), initial_sign_(initial_sign) {
  if (initial_sign_ != 1 && initial_sign_ != -1) {
    throw InvalidArgument("initial sign must be +1 or -1");
  }
  double prev = 0.0;
  for (double b : breakpoints_) {
    if (!(b > prev) || !(b < 1.0)) {
      throw InvalidArgument(
          "switching breakpoints must be strictly increasing inside (0, 1)");
    }
    prev = b;
  }
}

int SwitchingFunction::operator()(double t) const {
  const auto flips = static_cast<std::size_t>(
      std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t) -
      breakpoints_.begin());
  return sign_on_interval(flips);
}

std::vector<double> udd_times(int n) {
  if (n < 1) throw InvalidArgument("empty sequence");
  std::vector<double> out(static_cast<std::size_t>(n));
  const long double denom = 2.0L * n + 2.0L;
  // Lower half directly, upper half by reflection: delta_j + delta_{N+1-j} = 1.
  for (int j = 1; 2 * j <= n + 1; ++j) {
    // Extended precision so the stored instants are (nearly) correctly rounded.
    const long double s = std::sin(j * std::numbers::pi_v<long double> / denom);
    const auto lo = static_cast<std::size_t>(j - 1);
    const auto hi = static_cast<std::size_t>(n - j);
    out[lo] = 2 * j == n + 1 ? 0.5 : static_cast<double>(s * s);
    out[hi] = 2 * j == n + 1 ? 0.5 : static_cast<double>(1.0L - s * s);
  }
  return out;
}

PulseSequence udd_sequence(int n, PulseAxis axis, double duration) {
  std::vector<Pulse> pulses;
  for (double t : udd_times(n)) pulses.push_back({t, axis});
  return PulseSequence(std::move(pulses), duration);
}

SwitchingFunction switching_function(const PulseSequence& seq,
                                     PulseAxis coupling_axis) {
  for (const Pulse& p : seq.pulses()) {
    if (p.axis == coupling_axis) {
      throw InvalidArgument("pulse does not toggle this coupling");
    }
  }
  return SwitchingFunction(seq.instants(), +1);
}

PulseSequence qdd_sequence(int n_outer, int n_inner, PulseAxis outer_axis,
                           PulseAxis inner_axis, double duration) {
  if (outer_axis == inner_axis) {
    throw InvalidArgument("QDD requires perpendicular outer and inner axes");
  }
  const std::vector<double> outer = udd_times(n_outer);
  const std::vector<double> inner = udd_times(n_inner);

  std::vector<Pulse> pulses;
  pulses.reserve(outer.size() + (outer.size() + 1) * inner.size());
  double lo = 0.0;
  for (std::size_t k = 0; k <= outer.size(); ++k) {
    const double hi = (k < outer.size()) ? outer[k] : 1.0;
    for (double u : inner) pulses.push_back({lo + (hi - lo) * u, inner_axis});
    if (k < outer.size()) pulses.push_back({hi, outer_axis});
    lo = hi;
  }
  return PulseSequence(std::move(pulses), duration);
}

nlohmann::json to_json(const PulseSequence& seq) {
  nlohmann::json pulses = nlohmann::json::array();
  for (const Pulse& p : seq.pulses()) {
    pulses.push_back({{"t", p.instant}, {"axis", std::string(1, axis_name(p.axis))}});
  }
  return {{"duration", seq.duration()}, {"pulses", std::move(pulses)}};
}

PulseSequence sequence_from_json(const nlohmann::json& j) {
  try {
    std::vector<Pulse> pulses;
    for (const auto& p : j.at("pulses")) {
      pulses.push_back(
          {p.at("t").get<double>(), parse_axis(p.at("axis").get<std::string>())});
    }
    return PulseSequence(std::move(pulses), j.value("duration", 1.0));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed sequence JSON: ") + e.what());
  }
}

}  // namespace uddtd
