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

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "uddtd/piecewise.hpp"
#include "uddtd/sequence.hpp"

namespace uddtd {

using Complex = std::complex<double>;
// Dense operator on qubit (x) bath, qubit as the leading tensor factor.
using Matrix = Eigen::MatrixXcd;
using Qubit = Eigen::Matrix2cd;

inline constexpr int kMaxBathDim = 16;

const Qubit& pauli(PulseAxis axis);
const Qubit& qubit_identity();

Matrix kron(const Qubit& qubit, const Matrix& bath);
Matrix commutator(const Matrix& a, const Matrix& b);
Matrix anticommutator(const Matrix& a, const Matrix& b);

double frobenius(const Matrix& m);
double hermiticity_residual(const Matrix& m);  // ||M - M^dagger||_F
double unitarity_residual(const Matrix& u);    // ||U^dagger U - 1||_F

// exp(A) by scaling and squaring with a degree-13 Pade kernel.
Matrix expm(const Matrix& a);
// exp(-i t H) for Hermitian H via its eigendecomposition; exactly unitary up
// to rounding.
Matrix expm_hermitian(const Matrix& h, double t);

// Levi-Civita symbol on {x, y, z} = {0, 1, 2}.
int levi_civita(int i, int j, int k);

/// Time-dependent qubit-bath Hamiltonian given by Taylor coefficients:
///   H(t) = 1 (x) H_b(t) + sum_i sigma_i (x) A_i(t),   X(t) = sum_p X[p] t^p.
/// D_0 = H_b + sigma_z A_z is the part commuting with sigma_z;
/// D_1 = sigma_x A_x + sigma_y A_y is the transverse coupling.
struct HamiltonianSeries {
  int bath_dim = 0;
  std::vector<Matrix> bath;  // H_b[p]
  std::vector<Matrix> ax;
  std::vector<Matrix> ay;
  std::vector<Matrix> az;

  int degree() const { return static_cast<int>(bath.size()) - 1; }
  int dim() const { return 2 * bath_dim; }

  Matrix bath_at(double t) const;
  Matrix coupling_at(PulseAxis axis, double t) const;

  Matrix at(double t) const;
  Matrix d0(double t = 0.0) const;
  Matrix d1(double t = 0.0) const;

  // Only the p = 0 coefficients.
  HamiltonianSeries constant_part() const;
  HamiltonianSeries without_transverse() const;  // A_x = A_y = 0

  // Throws InvalidArgument on shape mismatch or non-Hermitian coefficients.
  void validate(double tol = 1e-12) const;
};

// Time-independent series from explicit d x d blocks.
HamiltonianSeries constant_hamiltonian(const Matrix& bath, const Matrix& ax,
                                       const Matrix& ay, const Matrix& az);

struct RandomHamiltonianOptions {
  double bath_scale = 1.0;      // H_b[0]
  double coupling_scale = 0.5;  // every other coefficient
  bool transverse = true;       // A_x, A_y present
  bool longitudinal = true;     // A_z present
};

/// Seeded random Hermitian coefficients, each normalized to unit spectral
/// norm and then scaled. All four blocks are always drawn in the same order,
/// so disabling a coupling zeroes it without changing the others.
HamiltonianSeries random_hamiltonian(int bath_dim, int degree,
                                     std::uint64_t seed,
                                     const RandomHamiltonianOptions& opts = {});

// sum_i sigma_i (x) C_i,  C_i = [H_b, A_i] - i sum_j eps^{zij} {A_z, A_j},
// built from the p = 0 coefficients. Equals [D_0, D_1].
Matrix eta2(const HamiltonianSeries& h);

// [D_1, eta2] from its block formula: a bath-identity part
//   sum_i [A_i, C_i]
// plus a sigma_z part
//   i sigma_z sum_i {A_i, sum_j eps^{ijz} [H_b, A_j] + i {A_z, A_i}}.
Matrix d1_eta2_commutator(const HamiltonianSeries& h);

struct MagnusTerms {
  Matrix h1;
  Matrix h2;
  Matrix h3;
  MagnusIntegrals integrals;
};

/// Magnus terms of H(t) = D_0 + F(t) D_1 over one period T_p, with the
/// convention U(T_p) = exp(-i T_p (H1 + H2 + H3) + O(T_p^4)), so T_p H^(n)
/// is the n-th Magnus exponent term and H^(n) carries T_p^{n-1}:
///   H1 = D_0 + (I_1 / T_p) D_1
///   H2 = -(i / 2) (J_2 / T_p) eta2
///   H3 = -(1 / (6 T_p)) (I_31 [D_0, eta2] + I_32 [D_1, eta2])
/// Only the time-independent (p = 0) part of `h` is used.
MagnusTerms magnus_terms(const HamiltonianSeries& h, const SwitchingFunction& f,
                         double t_p);

// Row-major nested arrays of [re, im] pairs.
nlohmann::json to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);
nlohmann::json to_json(const HamiltonianSeries& h);

}  // namespace uddtd
