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

#include <cmath>
#include <fstream>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "uddtd/errors.hpp"
#include "uddtd/piecewise.hpp"
#include "uddtd/sequence.hpp"

namespace uddtd {
namespace {

SwitchingFunction udd(int n) {
  return switching_function(udd_sequence(n, PulseAxis::X), PulseAxis::Z);
}

nlohmann::json oracle() {
  std::ifstream in(UDDTD_TEST_DATA_DIR "/oracle_values.json");
  return nlohmann::json::parse(in);
}

TEST(Piecewise, AntiderivativeOfConstant) {
  const auto g = PiecewisePolynomial::constant(1.0).antiderivative();
  for (double t : {0.0, 0.3, 1.0}) EXPECT_DOUBLE_EQ(g(t), t);
  const auto h = PiecewisePolynomial::monomial(1).antiderivative();
  EXPECT_DOUBLE_EQ(h(0.6), 0.18);
}

TEST(Piecewise, AntiderivativeOfUddOne) {
  const auto g = PiecewisePolynomial::from_switching(udd(1)).antiderivative();
  EXPECT_DOUBLE_EQ(g(0.25), 0.25);
  EXPECT_DOUBLE_EQ(g(0.5), 0.5);
  EXPECT_NEAR(g(0.75), 0.25, 1e-15);
  EXPECT_NEAR(g(1.0), 0.0, 1e-16);
}

TEST(Piecewise, AntiderivativeIsContinuous) {
  const auto f = udd(6);
  auto g = (PiecewisePolynomial::from_switching(f).times_monomial(3)).antiderivative();
  for (double b : f.breakpoints()) {
    EXPECT_NEAR(g(b - 1e-12), g(b + 1e-12), 1e-11);
  }
  EXPECT_EQ(g.breakpoints(), f.breakpoints());
  EXPECT_EQ(g.degree(), 4u);
}

TEST(Piecewise, AlgebraAgreesPointwise) {
  const auto a = PiecewisePolynomial::from_switching(udd(3)).times_monomial(2);
  const auto b = PiecewisePolynomial::from_switching(udd(4)) + PiecewisePolynomial::monomial(1);
  const auto prod = a * b;
  const auto sum = a + b * 2.0;
  for (int i = 1; i < 100; ++i) {
    const double t = i / 100.0 + 1e-3;
    EXPECT_NEAR(prod(t), a(t) * b(t), 1e-14);
    EXPECT_NEAR(sum(t), a(t) + 2.0 * b(t), 1e-14);
  }
}

TEST(Piecewise, RejectsMismatchedShape) {
  const std::vector<double> bp{0.5};
  EXPECT_THROW(PiecewisePolynomial(bp, {{1.0}}), InvalidArgument);
}

TEST(OrderedCoefficient, SpecExamples) {
  EXPECT_NEAR(ordered_coefficient({{0}, udd(1)}), 0.0, 1e-15);
  EXPECT_NEAR(ordered_coefficient({{1}, udd(2)}), 0.0, 1e-15);
  EXPECT_NEAR(ordered_coefficient({{0, 0, 0}, udd(3)}), 0.0, 1e-12);
}

TEST(OrderedCoefficient, ChainBounds) {
  EXPECT_THROW(ordered_coefficient({{0, 0, 0, 0, 0, 0, 0}, udd(3)}), InvalidArgument);
  EXPECT_THROW(ordered_coefficient({{13}, udd(3)}), InvalidArgument);
  EXPECT_THROW(ordered_coefficient({{}, udd(3)}), InvalidArgument);
  try {
    ordered_coefficient({{0, 0, 0, 0, 0, 0, 0}, udd(3)});
  } catch (const InvalidArgument& e) {
    EXPECT_STREQ(e.what(), "chain too deep");
  }
}

TEST(OrderedCoefficient, MatchesOracle) {
  for (const auto& row : oracle()["coefficients"]) {
    const int n = row["N"];
    const std::vector<int> p = row["p"];
    EXPECT_NEAR(ordered_coefficient({p, udd(n)}), row["value"].get<double>(), 1e-14)
        << "N=" << n;
  }
}

TEST(OrderedCoefficient, VanishingTheorem) {
  for (int n_pulses = 1; n_pulses <= 8; ++n_pulses) {
    const auto f = udd(n_pulses);
    for (int n : {1, 3, 5}) {
      const int budget = n_pulses - n;
      if (budget < 0) continue;
      std::vector<int> p(n, 0);
      while (true) {
        EXPECT_LE(std::abs(ordered_coefficient({p, f})), 1e-10);
        int k = 0;
        while (k < n) {
          ++p[k];
          int sum = 0;
          for (int x : p) sum += x;
          if (sum <= budget) break;
          p[k] = 0;
          ++k;
        }
        if (k == n) break;
      }
    }
  }
}

TEST(OrderedCoefficient, SignFlip) {
  for (int n_pulses : {2, 3, 5}) {
    const auto f = udd(n_pulses);
    for (const std::vector<int>& p :
         {std::vector<int>{1}, {0, 2}, {1, 0, 1}, {2, 1, 0, 1}}) {
      const double sign = p.size() % 2 ? -1.0 : 1.0;
      EXPECT_NEAR(ordered_coefficient({p, f.negated()}), sign * ordered_coefficient({p, f}),
                  1e-14);
    }
  }
}

TEST(OrderedCoefficient, SquaredSwitchingDropsOut) {
  const auto f = udd(4);
  OrderedChain squared{{{1, 2}, {0, 1}, {2, 0}}};
  OrderedChain plain{{{1, 0}, {0, 1}, {2, 0}}};
  EXPECT_NEAR(evaluate_chain(squared, f), evaluate_chain(plain, f), 1e-14);
}

TEST(OrderedCoefficient, TotalOrder) {
  const std::vector<int> p{1, 0, 2};
  EXPECT_EQ(OrderedChain::switched(p).total_order(), 6);
}

TEST(MagnusIntegrals, MatchOracle) {
  const auto o = oracle()["magnus"];
  for (int n = 1; n <= 8; ++n) {
    const auto& row = o[std::to_string(n)];
    const auto f = udd(n);
    EXPECT_NEAR(i1(f), row["I1"].get<double>(), 1e-14) << n;
    EXPECT_NEAR(j2(f), row["J2"].get<double>(), 1e-14) << n;
    EXPECT_NEAR(i31(f), row["I31"].get<double>(), 1e-14) << n;
    EXPECT_NEAR(i32(f), row["I32"].get<double>(), 1e-14) << n;
  }
}

TEST(MagnusIntegrals, ReferenceValues) {
  EXPECT_NEAR(i32(udd(3)), -0.03033, 1e-5);
  EXPECT_NEAR(i32(udd(6)), -0.00884, 1e-5);
  EXPECT_NEAR(i32(udd(7)), -0.00668, 1e-5);
  EXPECT_NEAR(i32(udd(8)), -0.00524, 1e-5);
}

TEST(MagnusIntegrals, ConstantSwitchingGivesZeroCommutators) {
  const SwitchingFunction one(std::vector<double>{});
  EXPECT_DOUBLE_EQ(i1(one), 1.0);
  EXPECT_NEAR(j2(one), 0.0, 1e-16);
  EXPECT_NEAR(i31(one), 0.0, 1e-16);
  EXPECT_NEAR(i32(one), 0.0, 1e-16);
}

TEST(MagnusIntegrals, ScaleWithPeriod) {
  const auto m = magnus_integrals(udd(3), 0.2);
  EXPECT_NEAR(m.i32, i32(udd(3)) * 0.008, 1e-17);
}

TEST(MonteCarlo, AgreesWithExact) {
  const auto f = udd(2);
  const auto e = mc_oracle({{0, 0}, f}, 1000000, 11);
  EXPECT_LE(std::abs(e.estimate - ordered_coefficient({{0, 0}, f})), 4 * e.standard_error);
  const auto g = mc_oracle(i1_chain(), f, 1000000, 12);
  EXPECT_LE(std::abs(g.estimate), 4 * g.standard_error);
  const auto h = mc_oracle(i32_chain(), udd(3), 1000000, 13);
  EXPECT_LE(std::abs(h.estimate - i32(udd(3))), 4 * h.standard_error);
}

TEST(MonteCarlo, DeterministicPerSeed) {
  const auto a = mc_oracle({{1, 0}, udd(3)}, 10000, 5);
  const auto b = mc_oracle({{1, 0}, udd(3)}, 10000, 5);
  EXPECT_EQ(a.estimate, b.estimate);
  EXPECT_EQ(a.standard_error, b.standard_error);
  EXPECT_THROW(mc_oracle({{1}, udd(3)}, 9999, 5), InvalidArgument);
}

}  // namespace
}  // namespace uddtd
