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

#include "uddtd/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "uddtd/errors.hpp"

namespace uddtd {

namespace {

using std::numbers::pi;

double trig(TrigKind kind, double x) {
  return kind == TrigKind::Cos ? std::cos(x) : std::sin(x);
}

void integrate_cos(int k, int m, double c, TrigPolynomial& out);

// int theta^k sin(m theta), m > 0, by parts.
void integrate_sin(int k, int m, double c, TrigPolynomial& out) {
  out.add(k, m, TrigKind::Cos, -c / m);
  if (k > 0) integrate_cos(k - 1, m, c * k / m, out);
}

// int theta^k cos(m theta), m > 0, by parts.
void integrate_cos(int k, int m, double c, TrigPolynomial& out) {
  out.add(k, m, TrigKind::Sin, c / m);
  if (k > 0) integrate_sin(k - 1, m, -c * k / m, out);
}

// cos(pi * num / den) with num reduced modulo 2 den first, so that angles at
// the profile breakpoints are evaluated without accumulated phase error.
double cos_pi_ratio(long long num, long long den) {
  long long r = num % (2 * den);
  if (r < 0) r += 2 * den;
  return std::cos(pi * static_cast<double>(r) / static_cast<double>(den));
}

void check_theta_chain(std::span<const int> q, const char* what) {
  if (q.empty()) throw InvalidArgument(std::string(what) + ": empty chain");
  if (q.size() > kMaxThetaChainLength) {
    throw InvalidArgument(std::string(what) + ": chain too deep");
  }
}

double weighted_chain(const TrigPolynomial& first, std::span<const int> rest) {
  TrigPolynomial g = first.integral_from(0.0);
  for (int s : rest) g = (g * TrigPolynomial::cos(s)).integral_from(0.0);
  return g(pi);
}

}  // namespace

TrigPolynomial TrigPolynomial::constant(double c) {
  TrigPolynomial p;
  p.add(0, 0, TrigKind::Cos, c);
  return p;
}

TrigPolynomial TrigPolynomial::cos(int m, double coeff) {
  TrigPolynomial p;
  p.add(0, m, TrigKind::Cos, coeff);
  return p;
}

TrigPolynomial TrigPolynomial::sin(int m, double coeff) {
  TrigPolynomial p;
  p.add(0, m, TrigKind::Sin, coeff);
  return p;
}

void TrigPolynomial::add(int power, int frequency, TrigKind kind,
                         double coeff) {
  if (power < 0) throw InvalidArgument("negative theta power");
  if (frequency < 0) {
    frequency = -frequency;
    if (kind == TrigKind::Sin) coeff = -coeff;
  }
  if (frequency == 0 && kind == TrigKind::Sin) return;
  if (coeff == 0.0) return;
  const TrigMonomial key{power, frequency, kind};
  auto [it, inserted] = terms_.try_emplace(key, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0.0) terms_.erase(it);
  }
}

int TrigPolynomial::max_power() const {
  int k = 0;
  for (const auto& [mono, c] : terms_) k = std::max(k, mono.power);
  return k;
}

double TrigPolynomial::operator()(double theta) const {
  double acc = 0.0;
  for (const auto& [mono, c] : terms_) {
    acc += c * std::pow(theta, mono.power) * trig(mono.kind, mono.frequency * theta);
  }
  return acc;
}

TrigPolynomial TrigPolynomial::operator+(const TrigPolynomial& rhs) const {
  TrigPolynomial out = *this;
  for (const auto& [mono, c] : rhs.terms_) {
    out.add(mono.power, mono.frequency, mono.kind, c);
  }
  return out;
}

TrigPolynomial TrigPolynomial::operator-(const TrigPolynomial& rhs) const {
  return *this + rhs * -1.0;
}

TrigPolynomial TrigPolynomial::operator*(double s) const {
  TrigPolynomial out;
  for (const auto& [mono, c] : terms_) {
    out.add(mono.power, mono.frequency, mono.kind, c * s);
  }
  return out;
}

TrigPolynomial TrigPolynomial::operator*(const TrigPolynomial& rhs) const {
  TrigPolynomial out;
  for (const auto& [a, ca] : terms_) {
    for (const auto& [b, cb] : rhs.terms_) {
      const int k = a.power + b.power;
      const int sum = a.frequency + b.frequency;
      const int diff = a.frequency - b.frequency;
      const double h = 0.5 * ca * cb;
      if (a.kind == TrigKind::Cos && b.kind == TrigKind::Cos) {
        out.add(k, diff, TrigKind::Cos, h);
        out.add(k, sum, TrigKind::Cos, h);
      } else if (a.kind == TrigKind::Sin && b.kind == TrigKind::Sin) {
        out.add(k, diff, TrigKind::Cos, h);
        out.add(k, sum, TrigKind::Cos, -h);
      } else if (a.kind == TrigKind::Sin) {  // sin a cos b
        out.add(k, sum, TrigKind::Sin, h);
        out.add(k, diff, TrigKind::Sin, h);
      } else {  // cos a sin b
        out.add(k, sum, TrigKind::Sin, h);
        out.add(k, diff, TrigKind::Sin, -h);
      }
    }
  }
  return out;
}

TrigPolynomial TrigPolynomial::antiderivative() const {
  TrigPolynomial out;
  for (const auto& [mono, c] : terms_) {
    if (mono.frequency == 0) {
      // Resonant term: plain power of theta.
      if (mono.power + 1 > kMaxPower) {
        throw InvalidArgument("theta power exceeds integration bound");
      }
      out.add(mono.power + 1, 0, TrigKind::Cos, c / (mono.power + 1));
    } else if (mono.kind == TrigKind::Cos) {
      integrate_cos(mono.power, mono.frequency, c, out);
    } else {
      integrate_sin(mono.power, mono.frequency, c, out);
    }
  }
  return out;
}

TrigPolynomial TrigPolynomial::integral_from(double a) const {
  TrigPolynomial g = antiderivative();
  return g - constant(g(a));
}

TrigPolynomial TrigPolynomial::pruned(double tol) const {
  TrigPolynomial out;
  for (const auto& [mono, c] : terms_) {
    if (std::abs(c) > tol) out.terms_.emplace(mono, c);
  }
  return out;
}

ThetaProfile theta_profile(int n) {
  if (n < 0) throw InvalidArgument("pulse count must be non-negative");
  ThetaProfile p;
  p.pulses = n;
  for (int j = 1; j <= n; ++j) p.breakpoints.push_back(j * pi / (n + 1));
  for (int j = 0; j <= n; ++j) p.values.push_back(j % 2 == 0 ? 1 : -1);
  return p;
}

bool in_spectrum(int n, int r) {
  const int period = n + 1;
  return r != 0 && r % period == 0 && (std::abs(r / period) % 2 == 1);
}

double fourier_coefficient(int n, int r) {
  if (n < 0) throw InvalidArgument("pulse count must be non-negative");
  if (r < 1) throw InvalidArgument("harmonic index must be positive");
  // Interval j spans [j pi/(N+1), (j+1) pi/(N+1)] with sign (-1)^j.
  double acc = 0.0;
  const long long den = n + 1;
  for (long long j = 0; j <= n; ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    acc += sign * (cos_pi_ratio(r * j, den) - cos_pi_ratio(r * (j + 1), den));
  }
  return 2.0 / pi * acc / r;
}

TrigPolynomial fourier_series(int n, int k_max) {
  if (n < 0 || k_max < 0) throw InvalidArgument("bad Fourier series bounds");
  TrigPolynomial p;
  for (int k = 0; k <= k_max; ++k) {
    p.add(0, (2 * k + 1) * (n + 1), TrigKind::Sin, 4.0 / ((2 * k + 1) * pi));
  }
  return p;
}

double f_coefficient(int n, std::span<const int> q) {
  check_theta_chain(q, "f_coefficient");
  for (int qj : q) {
    if (std::abs(qj) > kMaxThetaFrequency) {
      throw InvalidArgument("f_coefficient: |q_j| exceeds bound");
    }
  }
  const ThetaProfile prof = theta_profile(n);
  std::vector<double> edges{0.0};
  edges.insert(edges.end(), prof.breakpoints.begin(), prof.breakpoints.end());
  edges.push_back(pi);

  std::vector<TrigPolynomial> g(prof.values.size(), TrigPolynomial::constant(1.0));
  double carry = 0.0;
  for (int qj : q) {
    carry = 0.0;
    for (std::size_t s = 0; s < g.size(); ++s) {
      const TrigPolynomial weight = TrigPolynomial::sin(qj, prof.values[s]);
      TrigPolynomial p = (g[s] * weight).antiderivative();
      p = p + TrigPolynomial::constant(carry - p(edges[s]));
      carry = p(edges[s + 1]);
      g[s] = std::move(p);
    }
  }
  return carry;
}

double f_coefficient_series(int n, std::span<const int> q, int k_max) {
  check_theta_chain(q, "f_coefficient_series");
  const TrigPolynomial f = fourier_series(n, k_max);
  TrigPolynomial g = TrigPolynomial::constant(1.0);
  for (int qj : q) g = (g * f * TrigPolynomial::sin(qj)).integral_from(0.0);
  return g(pi);
}

double cos_chain(std::span<const int> s) {
  check_theta_chain(s, "cos_chain");
  return weighted_chain(TrigPolynomial::cos(s.front()), s.subspan(1));
}

TrigPolynomial reduce_innermost_pair(int s1, int s2, int s3) {
  TrigPolynomial g = TrigPolynomial::cos(s1).integral_from(0.0);
  g = (g * TrigPolynomial::cos(s2)).integral_from(0.0);
  return g * TrigPolynomial::cos(s3);
}

double cos_chain_reduced(std::span<const int> s) {
  check_theta_chain(s, "cos_chain_reduced");
  if (s.size() < 3) return cos_chain(s);

  const TrigPolynomial w = reduce_innermost_pair(s[0], s[1], s[2]);
  const std::span<const int> rest = s.subspan(3);
  double acc = 0.0;
  std::vector<int> shorter(rest.size() + 1);
  std::copy(rest.begin(), rest.end(), shorter.begin() + 1);
  for (const auto& [mono, c] : w.terms()) {
    if (mono.power == 0 && mono.kind == TrigKind::Cos) {
      shorter[0] = mono.frequency;
      acc += c * cos_chain_reduced(shorter);
    } else {
      TrigPolynomial single;
      single.add(mono.power, mono.frequency, mono.kind, c);
      acc += weighted_chain(single, rest);
    }
  }
  return acc;
}

}  // namespace uddtd
