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
#include <span>
#include <string_view>
#include <vector>

#include "uddtd/operators.hpp"
#include "uddtd/sequence.hpp"

namespace uddtd {

// Sub-step propagator between pulses.
//   Midpoint: exp(-i h H(t_mid)), second order.
//   Magnus4:  two-point Gauss-Legendre Magnus step with one commutator,
//             fourth order; exact for time-independent H.
enum class Integrator { Midpoint, Magnus4 };

struct EvolutionConfig {
  HamiltonianSeries hamiltonian;
  PulseSequence sequence;  // relative instants; stretched to total_time
  double total_time = 1.0;
  int steps_per_interval = 8;
  Integrator integrator = Integrator::Magnus4;
  // Step-halving stops once ||U(s) - U(2s)||_F <= tolerance.
  double tolerance = 1e-12;
  // 0 disables the convergence check: exactly steps_per_interval sub-steps.
  int max_refinements = 10;
};

struct Evolution {
  Matrix propagator;
  int steps_per_interval = 0;  // sub-steps actually used
  double residual = 0.0;       // last step-halving difference
};

// -i sigma_a (x) 1 = exp(-i (pi/2) sigma_a), an ideal instantaneous pi pulse.
Matrix pulse_unitary(PulseAxis axis, int bath_dim);
// Product of all pulse unitaries, latest on the left.
Matrix net_pulse(const PulseSequence& seq, int bath_dim);

// Fixed-step lab-frame propagator U(T) including the pulses.
Matrix propagate(const HamiltonianSeries& h, const PulseSequence& seq,
                 double total_time, int steps_per_interval,
                 Integrator integrator = Integrator::Magnus4);

// Lab-frame U(T) with step-halving refinement. Throws NumericalFailure,
// carrying the last residual, if refinement does not converge.
Evolution evolve_checked(const EvolutionConfig& cfg);
Matrix evolve(const EvolutionConfig& cfg);

// Removes the net pulse rotation: U_toggling = P^dagger U.
Matrix toggling_frame(const Matrix& u, const PulseSequence& seq);

// U = sum_alpha sigma_alpha (x) B_alpha, sigma_0 = identity.
struct PauliDecomposition {
  Matrix b0;
  Matrix bx;
  Matrix by;
  Matrix bz;

  Matrix reconstruct() const;
};

PauliDecomposition pauli_decompose(const Matrix& u);

// Which qubit-affecting blocks count as error.
//   Dephasing:  ||B_z||                   (sigma_z coupling, pulses about x/y)
//   Relaxation: sqrt(||B_x||^2+||B_y||^2) (transverse coupling, pulses about z)
//   General:    all three
enum class ErrorMode { Dephasing, Relaxation, General };

std::string_view mode_name(ErrorMode mode);
ErrorMode parse_mode(std::string_view name);

// Frobenius norm of the selected blocks of a toggling-frame propagator.
double error_metric(const Matrix& u, ErrorMode mode);

struct DysonResult {
  Matrix term;
  double quadrature_error = 0.0;  // ||u(grid) - u(grid / 2)||_F
  int grid = 0;                   // grid actually used
};

/// n-th Dyson term of the interaction-picture propagator,
///   u_n = int_{t_1 < ... < t_n} F(t_n) A_I(t_n) ... F(t_1) A_I(t_1),
///   A_I(t) = U_0^dagger(t) (sigma_z (x) A_z(t)) U_0(t),
/// with U_0 generated by the bath Hamiltonian alone. Integrated by RK4 on a
/// grid aligned with the switching instants; the grid is doubled until the
/// estimate settles. Requires n <= 3 and grid >= 64.
DysonResult dyson_term(const HamiltonianSeries& h, const SwitchingFunction& f,
                       int n, double total_time, int grid);

struct ScalingSample {
  double time;
  double error;
};

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;  // ln(error) at T = 1
  double r_squared = 0.0;
  std::size_t points = 0;
};

inline constexpr double kFitWindowLow = 1e-10;
inline constexpr double kFitWindowHigh = 1e-3;

struct ScalingReport {
  std::vector<ScalingSample> samples;
  double window_low = kFitWindowLow;
  double window_high = kFitWindowHigh;
  LogLogFit fit;
};

// Least squares on ln(error) vs ln(T) for samples with error in [low, high].
// Throws NoAsymptoticWindow with fewer than four samples in the window.
LogLogFit fit_loglog(std::span<const ScalingSample> samples,
                     double low = kFitWindowLow, double high = kFitWindowHigh);

// `points` log-spaced values from start to stop inclusive.
std::vector<double> log_grid(double start, double stop, int points);

struct SweepConfig {
  HamiltonianSeries hamiltonian;
  PulseSequence sequence;
  ErrorMode mode = ErrorMode::Dephasing;
  int steps_per_interval = 8;
  Integrator integrator = Integrator::Magnus4;
};

/// Evolves the template at every T of a log-spaced grid (>= 8 points), measures
/// the toggling-frame error and fits the log-log slope. Grid points are
/// independent and may run on `threads` workers; results do not depend on it.
ScalingReport scaling_sweep(const SweepConfig& cfg, std::span<const double> times,
                            unsigned threads = 1);

// The primary sequence stretched to total duration t and evolved (lab frame).
Matrix effective_propagator(const PulseSequence& seq, const HamiltonianSeries& h,
                            double t, int steps_per_interval = 8);

inline constexpr double kDefaultFiniteDifferenceStep = 1e-3;

/// H_eff(t) = i [d/dt U_eff(t)] U_eff(t)^dagger, for the toggling-frame
/// effective propagator. Central differences with step h = rel_step * t and
/// one Richardson level; the sub-step count is held fixed so U_eff is a smooth
/// function of t. Throws NumericalFailure if the result is not Hermitian to
/// 1e-8 (rounding in U_eff is amplified by 1/h, so h cannot be too small).
Matrix effective_hamiltonian(const PulseSequence& seq, const HamiltonianSeries& h,
                             double t, double rel_step = kDefaultFiniteDifferenceStep,
                             int steps_per_interval = 8);

/// Small-t structure of H_eff for a primary sequence about z and a
/// time-independent H = D_0 + D_1. With I_1 = J_2 = I_31 = 0 (UDD, N >= 3) the
/// rescaled Magnus exponent is t D_0 - (kappa/6) t^3 [D_1, eta2] + O(t^4),
/// kappa = I_32 / T_p^3, whose generator is
///   H_eff(t) = D_0 - (kappa/2) [D_1, eta2] t^2 + O(t^3).
/// H_eff(t) - D_0 is fitted elementwise to c2 t^2 + c3 t^3 + c4 t^4.
struct EffectiveHamiltonianFit {
  Matrix quadratic;  // fitted c2
  Matrix predicted;  // -(kappa/2) [D_1, eta2]
  double kappa = 0.0;
  double relative_error = 0.0;  // ||c2 - predicted||_F / ||predicted||_F
  std::vector<ScalingSample> distance;  // (t, ||H_eff(t) - D_0||_F)
};

EffectiveHamiltonianFit fit_effective_hamiltonian(
    const PulseSequence& seq, const HamiltonianSeries& h, std::span<const double> times,
    double rel_step = kDefaultFiniteDifferenceStep);

}  // namespace uddtd
