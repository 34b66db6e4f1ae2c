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

#include "uddtd/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "uddtd/errors.hpp"
#include "uddtd/random.hpp"

namespace uddtd {

namespace {

double horner(const std::vector<double>& c, double t) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
  return acc;
}

std::vector<double> merge_breakpoints(std::span<const double> a,
                                      std::span<const double> b) {
  std::vector<double> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

PiecewisePolynomial::PiecewisePolynomial(
    std::span<const double> breakpoints,
    std::vector<std::vector<double>> coeffs) {
  if (coeffs.size() != breakpoints.size() + 1) {
    throw InvalidArgument("need one coefficient list per segment");
  }
  double lo = 0.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const double hi = (k < breakpoints.size()) ? breakpoints[k] : 1.0;
    if (!(hi > lo)) {
      throw InvalidArgument(
          "breakpoints must be strictly increasing inside (0, 1)");
    }
    if (coeffs[k].empty()) coeffs[k].push_back(0.0);
    segments_.push_back({lo, hi, std::move(coeffs[k])});
    lo = hi;
  }
}

PiecewisePolynomial PiecewisePolynomial::constant(double c) {
  return PiecewisePolynomial(std::vector<Segment>{{0.0, 1.0, {c}}});
}

PiecewisePolynomial PiecewisePolynomial::monomial(int power) {
  std::vector<double> c(static_cast<std::size_t>(power) + 1, 0.0);
  c.back() = 1.0;
  return PiecewisePolynomial(std::vector<Segment>{{0.0, 1.0, std::move(c)}});
}

PiecewisePolynomial PiecewisePolynomial::from_switching(
    const SwitchingFunction& f) {
  std::vector<std::vector<double>> coeffs;
  for (std::size_t k = 0; k <= f.breakpoints().size(); ++k) {
    coeffs.push_back({static_cast<double>(f.sign_on_interval(k))});
  }
  return PiecewisePolynomial(f.breakpoints(), std::move(coeffs));
}

std::vector<double> PiecewisePolynomial::breakpoints() const {
  std::vector<double> out;
  for (std::size_t k = 1; k < segments_.size(); ++k) {
    out.push_back(segments_[k].lo);
  }
  return out;
}

std::size_t PiecewisePolynomial::degree() const {
  std::size_t d = 0;
  for (const Segment& s : segments_) d = std::max(d, s.coeffs.size() - 1);
  return d;
}

double PiecewisePolynomial::operator()(double t) const {
  auto it = std::upper_bound(
      segments_.begin(), segments_.end(), t,
      [](double v, const Segment& s) { return v < s.lo; });
  if (it != segments_.begin()) --it;
  return horner(it->coeffs, t);
}

PiecewisePolynomial PiecewisePolynomial::antiderivative() const {
  std::vector<Segment> out;
  out.reserve(segments_.size());
  double carry = 0.0;  // G at the left end of the current segment
  for (const Segment& s : segments_) {
    std::vector<double> c(s.coeffs.size() + 1, 0.0);
    for (std::size_t k = 0; k < s.coeffs.size(); ++k) {
      c[k + 1] = s.coeffs[k] / static_cast<double>(k + 1);
    }
    c[0] = carry - horner(c, s.lo);
    carry = horner(c, s.hi);
    out.push_back({s.lo, s.hi, std::move(c)});
  }
  return PiecewisePolynomial(std::move(out));
}

double PiecewisePolynomial::integral() const {
  // Per-segment definite integrals, Neumaier-compensated.
  double sum = 0.0;
  double comp = 0.0;
  for (const Segment& s : segments_) {
    std::vector<double> prim(s.coeffs.size() + 1, 0.0);
    for (std::size_t k = 0; k < s.coeffs.size(); ++k) {
      prim[k + 1] = s.coeffs[k] / static_cast<double>(k + 1);
    }
    for (double v : {horner(prim, s.hi), -horner(prim, s.lo)}) {
      const double t = sum + v;
      comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
      sum = t;
    }
  }
  return sum + comp;
}

PiecewisePolynomial PiecewisePolynomial::times_monomial(int power) const {
  if (power < 0) throw InvalidArgument("negative monomial power");
  std::vector<Segment> out = segments_;
  for (Segment& s : out) {
    s.coeffs.insert(s.coeffs.begin(), static_cast<std::size_t>(power), 0.0);
  }
  return PiecewisePolynomial(std::move(out));
}

PiecewisePolynomial PiecewisePolynomial::refined(
    std::span<const double> breakpoints) const {
  std::vector<Segment> out;
  auto bp = breakpoints.begin();
  for (const Segment& s : segments_) {
    double lo = s.lo;
    while (bp != breakpoints.end() && *bp <= lo) ++bp;
    while (bp != breakpoints.end() && *bp < s.hi) {
      out.push_back({lo, *bp, s.coeffs});
      lo = *bp++;
    }
    out.push_back({lo, s.hi, s.coeffs});
  }
  return PiecewisePolynomial(std::move(out));
}

PiecewisePolynomial PiecewisePolynomial::operator*(
    const PiecewisePolynomial& rhs) const {
  const std::vector<double> bps = merge_breakpoints(breakpoints(), rhs.breakpoints());
  const PiecewisePolynomial a = refined(bps);
  const PiecewisePolynomial b = rhs.refined(bps);
  std::vector<Segment> out;
  out.reserve(a.segments_.size());
  for (std::size_t k = 0; k < a.segments_.size(); ++k) {
    const auto& ca = a.segments_[k].coeffs;
    const auto& cb = b.segments_[k].coeffs;
    std::vector<double> c(ca.size() + cb.size() - 1, 0.0);
    for (std::size_t i = 0; i < ca.size(); ++i) {
      for (std::size_t j = 0; j < cb.size(); ++j) c[i + j] += ca[i] * cb[j];
    }
    out.push_back({a.segments_[k].lo, a.segments_[k].hi, std::move(c)});
  }
  return PiecewisePolynomial(std::move(out));
}

PiecewisePolynomial PiecewisePolynomial::operator*(double s) const {
  std::vector<Segment> out = segments_;
  for (Segment& seg : out) {
    for (double& c : seg.coeffs) c *= s;
  }
  return PiecewisePolynomial(std::move(out));
}

PiecewisePolynomial PiecewisePolynomial::operator+(
    const PiecewisePolynomial& rhs) const {
  const std::vector<double> bps = merge_breakpoints(breakpoints(), rhs.breakpoints());
  PiecewisePolynomial a = refined(bps);
  const PiecewisePolynomial b = rhs.refined(bps);
  for (std::size_t k = 0; k < a.segments_.size(); ++k) {
    auto& ca = a.segments_[k].coeffs;
    const auto& cb = b.segments_[k].coeffs;
    if (ca.size() < cb.size()) ca.resize(cb.size(), 0.0);
    for (std::size_t i = 0; i < cb.size(); ++i) ca[i] += cb[i];
  }
  return a;
}

OrderedChain OrderedChain::switched(std::span<const int> powers) {
  OrderedChain c;
  for (int p : powers) c.factors.push_back({p, 1});
  return c;
}

int OrderedChain::total_order() const {
  int order = static_cast<int>(factors.size());
  for (const ChainFactor& f : factors) order += f.power;
  return order;
}

double evaluate_chain(const OrderedChain& chain, const SwitchingFunction& f) {
  if (chain.factors.empty()) {
    throw InvalidArgument("ordered chain needs at least one variable");
  }
  if (chain.factors.size() > kMaxChainLength) {
    throw InvalidArgument("chain too deep");
  }
  for (const ChainFactor& c : chain.factors) {
    if (c.power < 0 || c.switch_power < 0) {
      throw InvalidArgument("chain powers must be non-negative");
    }
    if (c.power > kMaxChainPower) throw InvalidArgument("chain too deep");
  }

  const PiecewisePolynomial sign = PiecewisePolynomial::from_switching(f);
  PiecewisePolynomial g = PiecewisePolynomial::constant(1.0).refined(f.breakpoints());
  for (const ChainFactor& c : chain.factors) {
    g = g.times_monomial(c.power);
    for (int s = 0; s < c.switch_power; ++s) g = g * sign;
    g = g.antiderivative();
  }
  return g(1.0);
}

double ordered_coefficient(const OrderedIntegralSpec& spec) {
  return evaluate_chain(OrderedChain::switched(spec.powers), spec.sequence);
}

double ChainCombination::evaluate(const SwitchingFunction& f) const {
  double acc = 0.0;
  for (const auto& [coeff, chain] : terms) acc += coeff * evaluate_chain(chain, f);
  return acc;
}

double ChainCombination::integrand(const SwitchingFunction& f,
                                   std::span<const double> ordered_times) const {
  double acc = 0.0;
  for (const auto& [coeff, chain] : terms) {
    double v = coeff;
    for (std::size_t j = 0; j < chain.factors.size(); ++j) {
      const ChainFactor& c = chain.factors[j];
      const double t = ordered_times[j];
      for (int k = 0; k < c.power; ++k) v *= t;
      if (c.switch_power % 2 != 0) v *= f(t);
    }
    acc += v;
  }
  return acc;
}

std::size_t ChainCombination::length() const {
  if (terms.empty()) throw InvalidArgument("empty chain combination");
  const std::size_t n = terms.front().second.length();
  for (const auto& t : terms) {
    if (t.second.length() != n) {
      throw InvalidArgument("chains in a combination must share their length");
    }
  }
  return n;
}

namespace {

OrderedChain chain_of(std::initializer_list<int> switch_powers) {
  OrderedChain c;
  for (int s : switch_powers) c.factors.push_back({0, s});
  return c;
}

}  // namespace

ChainCombination i1_chain() { return {{{1.0, chain_of({1})}}}; }

ChainCombination j2_chain() {
  return {{{1.0, chain_of({1, 0})}, {-1.0, chain_of({0, 1})}}};
}

ChainCombination i31_chain() {
  return {{{1.0, chain_of({1, 0, 0})},
           {1.0, chain_of({0, 0, 1})},
           {-2.0, chain_of({0, 1, 0})}}};
}

ChainCombination i32_chain() {
  return {{{2.0, chain_of({1, 0, 1})},
           {-1.0, chain_of({1, 1, 0})},
           {-1.0, chain_of({0, 1, 1})}}};
}

double i1(const SwitchingFunction& f) { return i1_chain().evaluate(f); }
double j2(const SwitchingFunction& f) { return j2_chain().evaluate(f); }
double i31(const SwitchingFunction& f) { return i31_chain().evaluate(f); }
double i32(const SwitchingFunction& f) { return i32_chain().evaluate(f); }

MagnusIntegrals magnus_integrals(const SwitchingFunction& f, double t_p) {
  if (!(t_p > 0.0)) throw InvalidArgument("T_p must be positive");
  const double t2 = t_p * t_p;
  return {i1(f) * t_p, j2(f) * t2, i31(f) * t2 * t_p, i32(f) * t2 * t_p};
}

McEstimate mc_oracle(const ChainCombination& integrand,
                     const SwitchingFunction& f, std::size_t samples,
                     std::uint64_t seed) {
  if (samples < 10000) {
    throw InvalidArgument("Monte-Carlo oracle needs at least 10^4 samples");
  }
  const std::size_t n = integrand.length();
  double volume = 1.0;  // of the ordered simplex: 1/n!
  for (std::size_t k = 2; k <= n; ++k) volume /= static_cast<double>(k);

  Rng rng(seed);
  std::vector<double> times(n);
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    for (double& t : times) t = rng.uniform();
    std::sort(times.begin(), times.end());
    const double g = integrand.integrand(f, times);
    const double delta = g - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (g - mean);
  }
  const double var = m2 / static_cast<double>(samples - 1);
  return {mean * volume, std::sqrt(var / static_cast<double>(samples)) * volume};
}

McEstimate mc_oracle(const OrderedIntegralSpec& spec, std::size_t samples,
                     std::uint64_t seed) {
  ChainCombination c{{{1.0, OrderedChain::switched(spec.powers)}}};
  return mc_oracle(c, spec.sequence, samples, seed);
}

}  // namespace uddtd
