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

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <vector>

namespace uddtd {

enum class TrigKind { Cos, Sin };

// theta^power * trig(frequency * theta)
struct TrigMonomial {
  int power = 0;
  int frequency = 0;
  TrigKind kind = TrigKind::Cos;

  friend auto operator<=>(const TrigMonomial&, const TrigMonomial&) = default;
};

/// Finite sum of coeff * theta^k * {cos, sin}(m theta), m >= 0, kept in
/// canonical form: sin(0) terms dropped, negative frequencies folded, and
/// equal monomials merged. Closed under products with sin/cos and under
/// antidifferentiation, which is what nested theta-integrals need.
class TrigPolynomial {
 public:
  inline static constexpr int kMaxPower = 12;

  TrigPolynomial() = default;
  static TrigPolynomial constant(double c);
  static TrigPolynomial cos(int m, double coeff = 1.0);
  static TrigPolynomial sin(int m, double coeff = 1.0);

  // Adds coeff * theta^k * trig(m theta), normalizing negative m.
  void add(int power, int frequency, TrigKind kind, double coeff);

  const std::map<TrigMonomial, double>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  int max_power() const;

  double operator()(double theta) const;

  TrigPolynomial operator+(const TrigPolynomial& rhs) const;
  TrigPolynomial operator-(const TrigPolynomial& rhs) const;
  TrigPolynomial operator*(double s) const;
  TrigPolynomial operator*(const TrigPolynomial& rhs) const;

  // Antiderivative with no added constant (value at 0 not normalized).
  // Throws InvalidArgument when the theta power would exceed kMaxPower.
  TrigPolynomial antiderivative() const;
  // theta -> int_a^theta p.
  TrigPolynomial integral_from(double a) const;

  // Drops terms with |coeff| <= tol.
  TrigPolynomial pruned(double tol = 0.0) const;

 private:
  std::map<TrigMonomial, double> terms_;
};

// f(theta) = F(sin^2(theta / 2)) for the N-pulse UDD switching function.
struct ThetaProfile {
  int pulses = 0;
  std::vector<double> breakpoints;  // j pi / (N + 1), j = 1..N
  std::vector<int> values;          // (-1)^j on the j-th interval
};

ThetaProfile theta_profile(int n);

// a_r = (2/pi) int_0^pi f(theta) sin(r theta) dtheta, in closed form.
double fourier_coefficient(int n, int r);

// True when r is an odd multiple of N + 1.
bool in_spectrum(int n, int r);

// Truncated sine series sum_{k=0}^{k_max} 4/((2k+1) pi) sin((2k+1)(N+1) theta).
TrigPolynomial fourier_series(int n, int k_max);

inline constexpr std::size_t kMaxThetaChainLength = 5;
inline constexpr int kMaxThetaFrequency = 12;

// Nested integral over 0 <= theta_1 <= ... <= theta_n <= pi of
// prod_j f(theta_j) sin(q_j theta_j), using the exact piecewise profile.
double f_coefficient(int n, std::span<const int> q);
// Same integral with f replaced by its sine series truncated at k_max.
double f_coefficient_series(int n, std::span<const int> q, int k_max);

// Nested integral over the ordered simplex on [0, pi] of prod_j cos(s_j theta_j).
double cos_chain(std::span<const int> s);

/// Performs the two innermost integrations of a cosine chain analytically and
/// multiplies by the third factor: returns the theta_3 weight of the chain
/// after n has been lowered by two.
TrigPolynomial reduce_innermost_pair(int s1, int s2, int s3);

// Cosine chain evaluated by repeatedly applying reduce_innermost_pair until
// one integration remains.
double cos_chain_reduced(std::span<const int> s);

}  // namespace uddtd
