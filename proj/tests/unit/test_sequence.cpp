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
#include <numbers>

#include <gtest/gtest.h>

#include "uddtd/errors.hpp"
#include "uddtd/piecewise.hpp"
#include "uddtd/sequence.hpp"

namespace uddtd {
namespace {

TEST(UddTimes, SmallCases) {
  EXPECT_EQ(udd_times(1), std::vector<double>{0.5});
  const auto two = udd_times(2);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_NEAR(two[0], 0.25, 1e-15);
  EXPECT_NEAR(two[1], 0.75, 1e-15);
  const auto three = udd_times(3);
  EXPECT_NEAR(three[0], (1.0 - std::sqrt(2.0) / 2.0) / 2.0, 1e-15);
  EXPECT_EQ(three[1], 0.5);
  EXPECT_NEAR(three[2], 0.853553, 1e-6);
}

TEST(UddTimes, SymmetricAndIncreasing) {
  for (int n = 1; n <= 64; ++n) {
    const auto t = udd_times(n);
    ASSERT_EQ(t.size(), static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      EXPECT_NEAR(t[j] + t[n - 1 - j], 1.0, 1e-15) << "N=" << n << " j=" << j;
      if (j > 0) EXPECT_LT(t[j - 1], t[j]);
    }
  }
}

TEST(UddTimes, ZeroIsAnError) {
  try {
    udd_times(0);
    FAIL() << "expected InvalidArgument";
  } catch (const InvalidArgument& e) {
    EXPECT_STREQ(e.what(), "empty sequence");
  }
  EXPECT_THROW(udd_times(-3), InvalidArgument);
}

TEST(PulseSequence, RejectsBadInstants) {
  EXPECT_THROW(PulseSequence({{0.5, PulseAxis::X}, {0.5, PulseAxis::X}}), InvalidArgument);
  EXPECT_THROW(PulseSequence({{0.0, PulseAxis::X}}), InvalidArgument);
  EXPECT_THROW(PulseSequence({{1.0, PulseAxis::X}}), InvalidArgument);
  EXPECT_THROW(PulseSequence({{0.7, PulseAxis::X}, {0.2, PulseAxis::X}}), InvalidArgument);
  EXPECT_THROW(PulseSequence({{0.5, PulseAxis::X}}, 0.0), InvalidArgument);
  EXPECT_NO_THROW(PulseSequence({}, 2.0));
}

TEST(PulseSequence, SingleAxisAndRescale) {
  const auto seq = udd_sequence(3, PulseAxis::Y, 2.0);
  EXPECT_EQ(seq.single_axis(), PulseAxis::Y);
  EXPECT_DOUBLE_EQ(seq.duration(), 2.0);
  const auto r = seq.rescaled(0.1);
  EXPECT_DOUBLE_EQ(r.duration(), 0.1);
  EXPECT_EQ(r.instants(), seq.instants());
  EXPECT_FALSE(qdd_sequence(1, 1, PulseAxis::X, PulseAxis::Z).single_axis().has_value());
}

TEST(SwitchingFunction, UddOneAndTwo) {
  const auto f1 = switching_function(udd_sequence(1, PulseAxis::X), PulseAxis::Z);
  EXPECT_EQ(f1(0.0), 1);
  EXPECT_EQ(f1(0.49), 1);
  EXPECT_EQ(f1(0.51), -1);
  EXPECT_EQ(f1(1.0), -1);
  const auto f2 = switching_function(udd_sequence(2, PulseAxis::Y), PulseAxis::Z);
  EXPECT_EQ(f2.sign_on_interval(0), 1);
  EXPECT_EQ(f2.sign_on_interval(1), -1);
  EXPECT_EQ(f2.sign_on_interval(2), 1);
  EXPECT_EQ(f2.negated()(0.1), -1);
}

TEST(SwitchingFunction, ParallelPulseRejected) {
  try {
    switching_function(udd_sequence(3, PulseAxis::Z), PulseAxis::Z);
    FAIL() << "expected InvalidArgument";
  } catch (const InvalidArgument& e) {
    EXPECT_STREQ(e.what(), "pulse does not toggle this coupling");
  }
}

TEST(SwitchingFunction, UnitModulus) {
  const auto f = switching_function(udd_sequence(7, PulseAxis::X), PulseAxis::Y);
  for (int i = 0; i <= 1000; ++i) EXPECT_EQ(std::abs(f(i / 1000.0)), 1);
}

TEST(SwitchingFunction, UddIsBalanced) {
  for (int n = 1; n <= 64; ++n) {
    const auto f = switching_function(udd_sequence(n, PulseAxis::X), PulseAxis::Z);
    EXPECT_NEAR(PiecewisePolynomial::from_switching(f).integral(), 0.0, 1e-15) << n;
  }
}

TEST(Qdd, OneOne) {
  const auto seq = qdd_sequence(1, 1, PulseAxis::X, PulseAxis::Z);
  ASSERT_EQ(seq.size(), 3u);
  EXPECT_NEAR(seq.pulses()[0].instant, 0.25, 1e-15);
  EXPECT_EQ(seq.pulses()[0].axis, PulseAxis::Z);
  EXPECT_EQ(seq.pulses()[1].instant, 0.5);
  EXPECT_EQ(seq.pulses()[1].axis, PulseAxis::X);
  EXPECT_NEAR(seq.pulses()[2].instant, 0.75, 1e-15);
}

TEST(Qdd, TwoOne) {
  const auto seq = qdd_sequence(2, 1, PulseAxis::X, PulseAxis::Z);
  const std::vector<double> want{0.125, 0.25, 0.5, 0.75, 0.875};
  const std::vector<PulseAxis> axes{PulseAxis::Z, PulseAxis::X, PulseAxis::Z, PulseAxis::X,
                                    PulseAxis::Z};
  ASSERT_EQ(seq.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    EXPECT_NEAR(seq.pulses()[i].instant, want[i], 1e-15);
    EXPECT_EQ(seq.pulses()[i].axis, axes[i]);
  }
}

TEST(Qdd, CountAndOuterInstants) {
  for (int no = 1; no <= 4; ++no) {
    for (int ni = 1; ni <= 4; ++ni) {
      const auto seq = qdd_sequence(no, ni, PulseAxis::Y, PulseAxis::Z);
      EXPECT_EQ(seq.size(), static_cast<std::size_t>(no + (no + 1) * ni));
      std::vector<double> outer;
      for (const auto& p : seq.pulses()) {
        if (p.axis == PulseAxis::Y) outer.push_back(p.instant);
      }
      EXPECT_EQ(outer, udd_times(no));
    }
  }
  EXPECT_THROW(qdd_sequence(1, 1, PulseAxis::X, PulseAxis::X), InvalidArgument);
  EXPECT_THROW(qdd_sequence(0, 1, PulseAxis::X, PulseAxis::Z), InvalidArgument);
}

TEST(SequenceJson, RoundTrip) {
  const auto seq = qdd_sequence(2, 3, PulseAxis::X, PulseAxis::Z, 0.5);
  const auto j = to_json(seq);
  EXPECT_EQ(j["duration"], 0.5);
  EXPECT_EQ(j["pulses"][0]["axis"], "Z");
  EXPECT_EQ(sequence_from_json(j), seq);
  EXPECT_THROW(sequence_from_json(nlohmann::json{{"pulses", 3}}), InvalidArgument);
}

TEST(Axis, Parse) {
  EXPECT_EQ(parse_axis("x"), PulseAxis::X);
  EXPECT_EQ(parse_axis("Z"), PulseAxis::Z);
  EXPECT_THROW(parse_axis("w"), InvalidArgument);
  EXPECT_EQ(axis_name(PulseAxis::Y), 'Y');
}

}  // namespace
}  // namespace uddtd
