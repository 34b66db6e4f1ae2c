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

#include "uddtd/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "uddtd/errors.hpp"
#include "uddtd/parallel.hpp"
#include "uddtd/piecewise.hpp"

namespace uddtd {

namespace {

constexpr Complex kI{0.0, 1.0};

// Absolute interval edges 0, t_1, ..., t_N, T.
std::vector<double> interval_edges(const PulseSequence& seq, double total_time) {
  std::vector<double> edges{0.0};
  for (const Pulse& p : seq.pulses()) edges.push_back(p.instant * total_time);
  edges.push_back(total_time);
  return edges;
}

Matrix step_unitary(const HamiltonianSeries& h, double a, double step,
                    Integrator integrator) {
  if (integrator == Integrator::Midpoint) {
    return expm_hermitian(h.at(a + 0.5 * step), step);
  }
  static const double offset = std::sqrt(3.0) / 6.0;
  const Matrix h1 = h.at(a + (0.5 - offset) * step);
  const Matrix h2 = h.at(a + (0.5 + offset) * step);
  // i * Omega, Hermitian.
  const Matrix k = 0.5 * step * (h1 + h2) -
                   kI * (std::sqrt(3.0) / 12.0 * step * step) * commutator(h2, h1);
  return expm_hermitian(k, 1.0);
}

double norm2(const Matrix& m) { return m.squaredNorm(); }

}  // namespace

Matrix pulse_unitary(PulseAxis axis, int bath_dim) {
  return kron(-kI * pauli(axis), Matrix::Identity(bath_dim, bath_dim));
}

Matrix net_pulse(const PulseSequence& seq, int bath_dim) {
  Matrix p = Matrix::Identity(2 * bath_dim, 2 * bath_dim);
  for (const Pulse& pulse : seq.pulses()) p = pulse_unitary(pulse.axis, bath_dim) * p;
  return p;
}

Matrix propagate(const HamiltonianSeries& h, const PulseSequence& seq,
                 double total_time, int steps_per_interval, Integrator integrator) {
  if (!(total_time > 0.0)) throw InvalidArgument("total time must be positive");
  if (steps_per_interval < 1) throw InvalidArgument("need at least one sub-step");
  const std::vector<double> edges = interval_edges(seq, total_time);
  Matrix u = Matrix::Identity(h.dim(), h.dim());
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    const double step = (edges[k + 1] - edges[k]) / steps_per_interval;
    for (int s = 0; s < steps_per_interval; ++s) {
      u = step_unitary(h, edges[k] + s * step, step, integrator) * u;
    }
    if (k < seq.size()) u = pulse_unitary(seq.pulses()[k].axis, h.bath_dim) * u;
  }
  return u;
}

Evolution evolve_checked(const EvolutionConfig& cfg) {
  cfg.hamiltonian.validate();
  if (cfg.steps_per_interval < 8) {
    throw InvalidArgument("steps_per_interval must be at least 8");
  }
  int steps = cfg.steps_per_interval;
  Matrix u = propagate(cfg.hamiltonian, cfg.sequence, cfg.total_time, steps,
                       cfg.integrator);
  double residual = 0.0;
  for (int r = 0; r < cfg.max_refinements; ++r) {
    steps *= 2;
    Matrix finer = propagate(cfg.hamiltonian, cfg.sequence, cfg.total_time, steps,
                             cfg.integrator);
    residual = (finer - u).norm();
    u = std::move(finer);
    if (residual <= cfg.tolerance) return {std::move(u), steps, residual};
  }
  if (cfg.max_refinements > 0) {
    throw NumericalFailure(
        "step refinement did not converge (residual " + std::to_string(residual) + ")",
        residual);
  }
  return {std::move(u), steps, residual};
}

Matrix evolve(const EvolutionConfig& cfg) { return evolve_checked(cfg).propagator; }

Matrix toggling_frame(const Matrix& u, const PulseSequence& seq) {
  return net_pulse(seq, static_cast<int>(u.rows() / 2)).adjoint() * u;
}

Matrix PauliDecomposition::reconstruct() const {
  return kron(qubit_identity(), b0) + kron(pauli(PulseAxis::X), bx) +
         kron(pauli(PulseAxis::Y), by) + kron(pauli(PulseAxis::Z), bz);
}

PauliDecomposition pauli_decompose(const Matrix& u) {
  if (u.rows() != u.cols() || u.rows() % 2 != 0) {
    throw InvalidArgument("Pauli decomposition needs an even square matrix");
  }
  const Eigen::Index d = u.rows() / 2;
  auto block = [&](int r, int c) { return u.block(r * d, c * d, d, d); };
  // B_alpha = 1/2 sum_{r,c} sigma_alpha(c, r) U_{rc}
  auto project = [&](const Qubit& s) {
    Matrix b = Matrix::Zero(d, d);
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        if (s(c, r) != Complex(0.0)) b += s(c, r) * block(r, c);
      }
    }
    return Matrix(0.5 * b);
  };
  return {project(qubit_identity()), project(pauli(PulseAxis::X)),
          project(pauli(PulseAxis::Y)), project(pauli(PulseAxis::Z))};
}

std::string_view mode_name(ErrorMode mode) {
  switch (mode) {
    case ErrorMode::Dephasing: return "dephasing";
    case ErrorMode::Relaxation: return "relaxation";
    case ErrorMode::General: return "general";
  }
  return "general";
}

ErrorMode parse_mode(std::string_view name) {
  if (name == "dephasing") return ErrorMode::Dephasing;
  if (name == "relaxation") return ErrorMode::Relaxation;
  if (name == "general") return ErrorMode::General;
  throw InvalidArgument("unknown error mode '" + std::string(name) + "'");
}

double error_metric(const Matrix& u, ErrorMode mode) {
  const PauliDecomposition b = pauli_decompose(u);
  switch (mode) {
    case ErrorMode::Dephasing: return b.bz.norm();
    case ErrorMode::Relaxation: return std::sqrt(norm2(b.bx) + norm2(b.by));
    case ErrorMode::General:
      return std::sqrt(norm2(b.bx) + norm2(b.by) + norm2(b.bz));
  }
  return 0.0;
}

namespace {

// RK4 over the interaction-picture system
//   U_0' = -i (1 (x) H_b(t)) U_0,  G_k' = F A_I(t) G_{k-1},  G_0 = 1.
Matrix dyson_on_grid(const HamiltonianSeries& h, const SwitchingFunction& f, int n,
                     double total_time, int grid) {
  const int dim = h.dim();
  const Matrix id = Matrix::Identity(dim, dim);

  std::vector<double> edges{0.0};
  for (double b : f.breakpoints()) edges.push_back(b * total_time);
  edges.push_back(total_time);

  using State = std::vector<Matrix>;  // [U_0, G_1, ..., G_n]
  State y(static_cast<std::size_t>(n) + 1, Matrix::Zero(dim, dim));
  y[0] = id;

  auto deriv = [&](double t, const State& s, double sign) {
    State out(s.size());
    out[0] = -kI * kron(qubit_identity(), h.bath_at(t)) * s[0];
    const Matrix a_i =
        sign * (s[0].adjoint() * kron(pauli(PulseAxis::Z), h.coupling_at(PulseAxis::Z, t)) * s[0]);
    for (std::size_t k = 1; k < s.size(); ++k) {
      out[k] = a_i * (k == 1 ? id : s[k - 1]);
    }
    return out;
  };
  auto axpy = [](const State& s, const State& ds, double c) {
    State out(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) out[k] = s[k] + c * ds[k];
    return out;
  };

  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    const double sign = f.sign_on_interval(k);
    const double len = edges[k + 1] - edges[k];
    const int steps = std::max(2, static_cast<int>(std::ceil(grid * len / total_time)));
    const double dt = len / steps;
    for (int s = 0; s < steps; ++s) {
      const double t = edges[k] + s * dt;
      const State k1 = deriv(t, y, sign);
      const State k2 = deriv(t + 0.5 * dt, axpy(y, k1, 0.5 * dt), sign);
      const State k3 = deriv(t + 0.5 * dt, axpy(y, k2, 0.5 * dt), sign);
      const State k4 = deriv(t + dt, axpy(y, k3, dt), sign);
      for (std::size_t j = 0; j < y.size(); ++j) {
        y[j] += (dt / 6.0) * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
      }
    }
  }
  return y.back();
}

}  // namespace

DysonResult dyson_term(const HamiltonianSeries& h, const SwitchingFunction& f,
                       int n, double total_time, int grid) {
  if (n < 1 || n > 3) throw InvalidArgument("Dyson order must be in [1, 3]");
  if (grid < 64) throw InvalidArgument("Dyson grid must be at least 64");
  if (!(total_time > 0.0)) throw InvalidArgument("total time must be positive");
  h.validate();

  constexpr int kMaxDoublings = 6;
  Matrix coarse = dyson_on_grid(h, f, n, total_time, grid);
  double error = 0.0;
  for (int r = 0; r < kMaxDoublings; ++r) {
    grid *= 2;
    Matrix fine = dyson_on_grid(h, f, n, total_time, grid);
    error = (fine - coarse).norm();
    if (error <= 1e-6 * fine.norm() + 1e-14) return {std::move(fine), error, grid};
    coarse = std::move(fine);
  }
  throw NumericalFailure("Dyson quadrature did not converge", error);
}

LogLogFit fit_loglog(std::span<const ScalingSample> samples, double low, double high) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const ScalingSample& s : samples) {
    if (s.error >= low && s.error <= high) {
      xs.push_back(std::log(s.time));
      ys.push_back(std::log(s.error));
    }
  }
  if (xs.size() < 4) {
    throw NoAsymptoticWindow("no asymptotic window; adjust T_grid (" +
                             std::to_string(xs.size()) + " samples in window)");
  }
  const double m = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  LogLogFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  fit.points = xs.size();
  return fit;
}

std::vector<double> log_grid(double start, double stop, int points) {
  if (!(start > 0.0) || !(stop > start) || points < 2) {
    throw InvalidArgument("log grid needs 0 < start < stop and >= 2 points");
  }
  std::vector<double> out(static_cast<std::size_t>(points));
  const double a = std::log(start);
  const double b = std::log(stop);
  for (int i = 0; i < points; ++i) {
    out[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (points - 1));
  }
  out.front() = start;
  out.back() = stop;
  return out;
}

ScalingReport scaling_sweep(const SweepConfig& cfg, std::span<const double> times,
                            unsigned threads) {
  if (times.size() < 8) throw InvalidArgument("T_grid needs at least 8 points");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] > 0.0) || (i > 0 && !(times[i] > times[i - 1]))) {
      throw InvalidArgument("T_grid must be positive and increasing");
    }
  }
  const double ratio = std::log(times[1] / times[0]);
  for (std::size_t i = 2; i < times.size(); ++i) {
    if (std::abs(std::log(times[i] / times[i - 1]) - ratio) > 1e-6 * std::abs(ratio)) {
      throw InvalidArgument("T_grid must be log-spaced");
    }
  }
  cfg.hamiltonian.validate();

  ScalingReport report;
  report.samples.resize(times.size());
  parallel_for(times.size(), threads, [&](std::size_t i) {
    EvolutionConfig ev{cfg.hamiltonian, cfg.sequence, times[i], cfg.steps_per_interval,
                       cfg.integrator};
    const Matrix u = toggling_frame(evolve(ev), cfg.sequence);
    report.samples[i] = {times[i], error_metric(u, cfg.mode)};
  });
  report.fit = fit_loglog(report.samples, report.window_low, report.window_high);
  return report;
}

Matrix effective_propagator(const PulseSequence& seq, const HamiltonianSeries& h,
                            double t, int steps_per_interval) {
  if (!(t > 0.0)) throw InvalidArgument("effective propagator needs t > 0");
  EvolutionConfig cfg{h, seq.rescaled(t), t, steps_per_interval};
  return evolve(cfg);
}

Matrix effective_hamiltonian(const PulseSequence& seq, const HamiltonianSeries& h,
                             double t, double rel_step, int steps_per_interval) {
  if (!(t > 0.0)) throw InvalidArgument("effective Hamiltonian needs t > 0");
  if (!(rel_step > 0.0) || !(rel_step < 0.5)) {
    throw InvalidArgument("finite-difference step must satisfy 0 < h < t/2");
  }
  h.validate();
  auto u_eff = [&](double time) {
    return toggling_frame(propagate(h, seq, time, steps_per_interval), seq);
  };
  auto central = [&](double step) {
    return Matrix((u_eff(t + step) - u_eff(t - step)) / (2.0 * step));
  };
  const double step = rel_step * t;
  const Matrix du = (4.0 * central(0.5 * step) - central(step)) / 3.0;
  const Matrix heff = kI * du * u_eff(t).adjoint();
  const double residual = hermiticity_residual(heff);
  if (residual > 1e-8 * std::max(1.0, heff.norm())) {
    throw NumericalFailure("effective Hamiltonian is not Hermitian; reduce the step h",
                           residual);
  }
  return 0.5 * (heff + heff.adjoint());
}

EffectiveHamiltonianFit fit_effective_hamiltonian(
    const PulseSequence& seq, const HamiltonianSeries& h, std::span<const double> times,
    double rel_step) {
  if (times.size() < 3) throw InvalidArgument("quadratic fit needs at least 3 times");
  if (seq.single_axis() != PulseAxis::Z) {
    throw InvalidArgument("primary sequence must consist of pulses about z");
  }
  const HamiltonianSeries h0 = h.constant_part();
  const SwitchingFunction f = switching_function(seq, PulseAxis::X);

  EffectiveHamiltonianFit fit;
  fit.kappa = i32(f);
  fit.predicted = -0.5 * fit.kappa * d1_eta2_commutator(h0);
  const Matrix d0 = h0.d0();

  const auto m = static_cast<Eigen::Index>(times.size());
  Eigen::MatrixXd basis(m, 3);
  std::vector<Matrix> residuals;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double t = times[static_cast<std::size_t>(i)];
    basis(i, 0) = t * t;
    basis(i, 1) = t * t * t;
    basis(i, 2) = t * t * t * t;
    residuals.push_back(effective_hamiltonian(seq, h0, t, rel_step) - d0);
    fit.distance.push_back({t, residuals.back().norm()});
  }
  // First row of the least-squares pseudo-inverse picks out c2.
  const Eigen::MatrixXd pinv = basis.colPivHouseholderQr().solve(Eigen::MatrixXd::Identity(m, m));
  fit.quadratic = Matrix::Zero(d0.rows(), d0.cols());
  for (Eigen::Index i = 0; i < m; ++i) {
    fit.quadratic += pinv(0, i) * residuals[static_cast<std::size_t>(i)];
  }
  fit.relative_error = (fit.quadratic - fit.predicted).norm() / fit.predicted.norm();
  return fit;
}

}  // namespace uddtd
