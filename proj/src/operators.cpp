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

#include "uddtd/operators.hpp"

#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "uddtd/errors.hpp"
#include "uddtd/random.hpp"

namespace uddtd {

namespace {

constexpr Complex kI{0.0, 1.0};

Matrix polynomial_at(const std::vector<Matrix>& coeffs, double t) {
  Matrix acc = coeffs.back();
  for (auto it = std::next(coeffs.rbegin()); it != coeffs.rend(); ++it) {
    acc = acc * t + *it;
  }
  return acc;
}

Matrix random_hermitian(int d, Rng& rng) {
  Matrix g(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) g(r, c) = Complex(rng.normal(), rng.normal());
  }
  Matrix h = 0.5 * (g + g.adjoint());
  const Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  const double norm = es.eigenvalues().cwiseAbs().maxCoeff();
  return h / norm;
}

// Transverse coupling blocks indexed by 0 = x, 1 = y.
const Matrix& transverse(const HamiltonianSeries& h, int i) {
  return i == 0 ? h.ax.front() : h.ay.front();
}

}  // namespace

const Qubit& pauli(PulseAxis axis) {
  static const Qubit x = (Qubit() << 0, 1, 1, 0).finished();
  static const Qubit y = (Qubit() << 0, -kI, kI, 0).finished();
  static const Qubit z = (Qubit() << 1, 0, 0, -1).finished();
  switch (axis) {
    case PulseAxis::X: return x;
    case PulseAxis::Y: return y;
    case PulseAxis::Z: return z;
  }
  return z;
}

const Qubit& qubit_identity() {
  static const Qubit id = Qubit::Identity();
  return id;
}

Matrix kron(const Qubit& qubit, const Matrix& bath) {
  const Eigen::Index d = bath.rows();
  Matrix out(2 * d, 2 * d);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) out.block(r * d, c * d, d, d) = qubit(r, c) * bath;
  }
  return out;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }
Matrix anticommutator(const Matrix& a, const Matrix& b) { return a * b + b * a; }

double frobenius(const Matrix& m) { return m.norm(); }

double hermiticity_residual(const Matrix& m) { return (m - m.adjoint()).norm(); }

double unitarity_residual(const Matrix& u) {
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm();
}

Matrix expm(const Matrix& a) { return a.exp(); }

Matrix expm_hermitian(const Matrix& h, double t) {
  const Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()));
  const Eigen::VectorXcd phases =
      (es.eigenvalues() * (-t)).unaryExpr([](double x) { return std::polar(1.0, x); });
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

int levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  return ((i == 0 && j == 1) || (i == 1 && j == 2) || (i == 2 && j == 0)) ? 1 : -1;
}

Matrix HamiltonianSeries::bath_at(double t) const { return polynomial_at(bath, t); }

Matrix HamiltonianSeries::coupling_at(PulseAxis axis, double t) const {
  switch (axis) {
    case PulseAxis::X: return polynomial_at(ax, t);
    case PulseAxis::Y: return polynomial_at(ay, t);
    case PulseAxis::Z: return polynomial_at(az, t);
  }
  return polynomial_at(az, t);
}

Matrix HamiltonianSeries::at(double t) const { return d0(t) + d1(t); }

Matrix HamiltonianSeries::d0(double t) const {
  return kron(qubit_identity(), bath_at(t)) +
         kron(pauli(PulseAxis::Z), coupling_at(PulseAxis::Z, t));
}

Matrix HamiltonianSeries::d1(double t) const {
  return kron(pauli(PulseAxis::X), coupling_at(PulseAxis::X, t)) +
         kron(pauli(PulseAxis::Y), coupling_at(PulseAxis::Y, t));
}

HamiltonianSeries HamiltonianSeries::constant_part() const {
  return {bath_dim, {bath.front()}, {ax.front()}, {ay.front()}, {az.front()}};
}

HamiltonianSeries HamiltonianSeries::without_transverse() const {
  HamiltonianSeries out = *this;
  for (auto& m : out.ax) m.setZero();
  for (auto& m : out.ay) m.setZero();
  return out;
}

void HamiltonianSeries::validate(double tol) const {
  if (bath_dim < 1 || bath_dim > kMaxBathDim) {
    throw InvalidArgument("bath dimension must be in [1, 16]");
  }
  if (bath.empty() || ax.size() != bath.size() || ay.size() != bath.size() ||
      az.size() != bath.size()) {
    throw InvalidArgument("Hamiltonian coefficient lists must share one degree");
  }
  for (const auto* list : {&bath, &ax, &ay, &az}) {
    for (const Matrix& m : *list) {
      if (m.rows() != bath_dim || m.cols() != bath_dim) {
        throw InvalidArgument("Hamiltonian coefficient has wrong shape");
      }
      if (hermiticity_residual(m) > tol) {
        throw InvalidArgument("Hamiltonian coefficient is not Hermitian");
      }
    }
  }
}

HamiltonianSeries constant_hamiltonian(const Matrix& bath, const Matrix& ax,
                                       const Matrix& ay, const Matrix& az) {
  HamiltonianSeries h{static_cast<int>(bath.rows()), {bath}, {ax}, {ay}, {az}};
  h.validate();
  return h;
}

HamiltonianSeries random_hamiltonian(int bath_dim, int degree,
                                     std::uint64_t seed,
                                     const RandomHamiltonianOptions& opts) {
  if (bath_dim < 2 || bath_dim > kMaxBathDim) {
    throw InvalidArgument("bath dimension must be in [2, 16]");
  }
  if (degree < 0) throw InvalidArgument("Taylor degree must be non-negative");

  Rng rng(seed);
  HamiltonianSeries h;
  h.bath_dim = bath_dim;
  for (int p = 0; p <= degree; ++p) {
    const double bath_scale = (p == 0) ? opts.bath_scale : opts.coupling_scale;
    h.bath.push_back(bath_scale * random_hermitian(bath_dim, rng));
    h.ax.push_back(opts.coupling_scale * random_hermitian(bath_dim, rng));
    h.ay.push_back(opts.coupling_scale * random_hermitian(bath_dim, rng));
    h.az.push_back(opts.coupling_scale * random_hermitian(bath_dim, rng));
    if (!opts.transverse) {
      h.ax.back().setZero();
      h.ay.back().setZero();
    }
    if (!opts.longitudinal) h.az.back().setZero();
  }
  return h;
}

Matrix eta2(const HamiltonianSeries& h) {
  const Matrix& hb = h.bath.front();
  const Matrix& az = h.az.front();
  Matrix out = Matrix::Zero(h.dim(), h.dim());
  const PulseAxis sigma[2] = {PulseAxis::X, PulseAxis::Y};
  for (int i = 0; i < 2; ++i) {
    Matrix c = commutator(hb, transverse(h, i));
    for (int j = 0; j < 2; ++j) {
      const int eps = levi_civita(2, i, j);
      if (eps != 0) c -= kI * static_cast<double>(eps) * anticommutator(az, transverse(h, j));
    }
    out += kron(pauli(sigma[i]), c);
  }
  return out;
}

Matrix d1_eta2_commutator(const HamiltonianSeries& h) {
  const Matrix& hb = h.bath.front();
  const Matrix& az = h.az.front();
  const int d = h.bath_dim;
  Matrix bath_part = Matrix::Zero(d, d);
  Matrix z_part = Matrix::Zero(d, d);
  for (int i = 0; i < 2; ++i) {
    const Matrix& ai = transverse(h, i);
    Matrix inner = commutator(hb, ai);
    Matrix cross = kI * anticommutator(az, ai);
    for (int j = 0; j < 2; ++j) {
      const int eps = levi_civita(i, j, 2);
      if (eps == 0) continue;
      inner -= kI * static_cast<double>(eps) * anticommutator(az, transverse(h, j));
      cross += static_cast<double>(eps) * commutator(hb, transverse(h, j));
    }
    bath_part += commutator(ai, inner);
    z_part += anticommutator(ai, cross);
  }
  return kron(qubit_identity(), bath_part) + kron(kI * pauli(PulseAxis::Z), z_part);
}

MagnusTerms magnus_terms(const HamiltonianSeries& h, const SwitchingFunction& f,
                         double t_p) {
  if (!(t_p > 0.0)) throw InvalidArgument("T_p must be positive");
  h.validate();
  const Matrix d0 = h.d0();
  const Matrix d1 = h.d1();
  const Matrix eta = eta2(h);
  const MagnusIntegrals in = magnus_integrals(f, t_p);

  MagnusTerms out;
  out.integrals = in;
  out.h1 = d0 + (in.i1 / t_p) * d1;
  out.h2 = (-0.5 * kI * in.j2 / t_p) * eta;
  out.h3 = (-1.0 / (6.0 * t_p)) *
           (in.i31 * commutator(d0, eta) + in.i32 * commutator(d1, eta));
  return out;
}

nlohmann::json to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back({m(r, c).real(), m(r, c).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const nlohmann::json& j) {
  try {
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(j.at(0).size());
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      const auto& row = j.at(static_cast<std::size_t>(r));
      if (static_cast<Eigen::Index>(row.size()) != cols) {
        throw InvalidArgument("ragged matrix JSON");
      }
      for (Eigen::Index c = 0; c < cols; ++c) {
        const auto& e = row.at(static_cast<std::size_t>(c));
        m(r, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
      }
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed matrix JSON: ") + e.what());
  }
}

nlohmann::json to_json(const HamiltonianSeries& h) {
  auto list = [](const std::vector<Matrix>& ms) {
    nlohmann::json out = nlohmann::json::array();
    for (const Matrix& m : ms) out.push_back(to_json(m));
    return out;
  };
  return {{"bath_dim", h.bath_dim},
          {"degree", h.degree()},
          {"H_b", list(h.bath)},
          {"A_x", list(h.ax)},
          {"A_y", list(h.ay)},
          {"A_z", list(h.az)}};
}

}  // namespace uddtd
