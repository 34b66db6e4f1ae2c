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
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "uddtd/sequence.hpp"

namespace uddtd {

/// Piecewise polynomial on [0, 1]. Each segment [lo, hi) carries the
/// coefficients of sum_k c_k t^k in the *global* variable t, so no shifting is
/// needed when segments are multiplied together or integrated. The last
/// segment is closed at 1.
class PiecewisePolynomial {
 public:
  struct Segment {
    double lo;
    double hi;
    std::vector<double> coeffs;  // ascending powers of t
  };

  PiecewisePolynomial() : PiecewisePolynomial(constant(0.0)) {}
  // `breakpoints` are the interior boundaries (strictly increasing in (0, 1));
  // `coeffs` has one entry per resulting segment.
  PiecewisePolynomial(std::span<const double> breakpoints,
                      std::vector<std::vector<double>> coeffs);

  static PiecewisePolynomial constant(double c);
  static PiecewisePolynomial monomial(int power);
  static PiecewisePolynomial from_switching(const SwitchingFunction& f);

  const std::vector<Segment>& segments() const noexcept { return segments_; }
  std::vector<double> breakpoints() const;
  std::size_t degree() const;

  double operator()(double t) const;

  // G with G(0) = 0, G continuous and G' = *this on every segment interior.
  PiecewisePolynomial antiderivative() const;
  double integral() const;  // over [0, 1]

  PiecewisePolynomial times_monomial(int power) const;
  PiecewisePolynomial operator*(const PiecewisePolynomial& rhs) const;
  PiecewisePolynomial operator*(double s) const;
  PiecewisePolynomial operator+(const PiecewisePolynomial& rhs) const;

  // Split segments so every point of `breakpoints` is a segment boundary.
  PiecewisePolynomial refined(std::span<const double> breakpoints) const;

 private:
  explicit PiecewisePolynomial(std::vector<Segment> segments)
      : segments_(std::move(segments)) {}

  std::vector<Segment> segments_;
};

// One integration variable of an ordered chain: t^power * F(t)^switch_power.
struct ChainFactor {
  int power = 0;
  int switch_power = 1;

  friend bool operator==(const ChainFactor&, const ChainFactor&) = default;
};

/// Ordered nested integral over 0 <= t_1 <= ... <= t_n <= 1 of
/// prod_j t_j^{p_j} F(t_j)^{s_j}. Factors are listed earliest first.
struct OrderedChain {
  std::vector<ChainFactor> factors;

  // All factors carry exactly one F: the F_{p_1...p_n} coefficients.
  static OrderedChain switched(std::span<const int> powers);
  std::size_t length() const noexcept { return factors.size(); }
  // n + sum p_j: the power of T multiplying this chain.
  int total_order() const;
};

// The F_{p_1...p_n} coefficient for a given switching function.
struct OrderedIntegralSpec {
  std::vector<int> powers;
  SwitchingFunction sequence;
};

inline constexpr std::size_t kMaxChainLength = 6;
inline constexpr int kMaxChainPower = 12;

// Exact value of one chain by iterated piecewise antiderivatives.
// Throws InvalidArgument("chain too deep") beyond n <= 6, p_j <= 12.
double evaluate_chain(const OrderedChain& chain, const SwitchingFunction& f);
double ordered_coefficient(const OrderedIntegralSpec& spec);

// Signed sum of chains sharing one switching function.
struct ChainCombination {
  std::vector<std::pair<double, OrderedChain>> terms;

  double evaluate(const SwitchingFunction& f) const;
  // Integrand at ordered sample points (earliest first).
  double integrand(const SwitchingFunction& f,
                   std::span<const double> ordered_times) const;
  std::size_t length() const;
};

// The first few Magnus-expansion integrals, as chain combinations on [0, 1].
// Times are ordered t_early < t_mid < t_late.
ChainCombination i1_chain();   // F
ChainCombination j2_chain();   // F(early) - F(late)
ChainCombination i31_chain();  // F(early) + F(late) - 2 F(mid)
ChainCombination i32_chain();  // 2 F(early)F(late) - F(early)F(mid) - F(mid)F(late)

// Dimensionless values on [0, 1]; multiply by T_p, T_p^2, T_p^3, T_p^3.
double i1(const SwitchingFunction& f);
double j2(const SwitchingFunction& f);
double i31(const SwitchingFunction& f);
double i32(const SwitchingFunction& f);

struct MagnusIntegrals {
  double i1;   // units of T_p
  double j2;   // T_p^2
  double i31;  // T_p^3
  double i32;  // T_p^3
};
MagnusIntegrals magnus_integrals(const SwitchingFunction& f, double t_p);

struct McEstimate {
  double estimate;
  double standard_error;
};

// Monte-Carlo estimate of the same ordered integral from uniform samples of
// the ordered simplex (sorted uniform draws). Deterministic for a given seed.
// Requires samples >= 10^4.
McEstimate mc_oracle(const ChainCombination& integrand,
                     const SwitchingFunction& f, std::size_t samples,
                     std::uint64_t seed);
McEstimate mc_oracle(const OrderedIntegralSpec& spec, std::size_t samples,
                     std::uint64_t seed);

}  // namespace uddtd
