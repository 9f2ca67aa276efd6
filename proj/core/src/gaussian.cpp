// Copyright 2026 The pciclone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pciclone/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace pciclone {

namespace {

void check_mode(std::size_t mode, std::size_t count) {
  if (mode >= count) {
    throw DomainError("mode index " + std::to_string(mode) + " out of range for " +
                      std::to_string(count) + " modes");
  }
}

}  // namespace

Eigen::MatrixXd symplectic_form(std::size_t mode_count) {
  const auto n = static_cast<Eigen::Index>(2 * mode_count);
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; k += 2) {
    omega(k, k + 1) = 1.0;
    omega(k + 1, k) = -1.0;
  }
  return omega;
}

Eigen::Vector2d quadratures_of(Complex amplitude) {
  return {std::numbers::sqrt2 * amplitude.real(), std::numbers::sqrt2 * amplitude.imag()};
}

GaussianState::GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd covariance, double tol)
    : mean_(std::move(mean)), covariance_(std::move(covariance)) {
  if (mean_.size() == 0 || mean_.size() % 2 != 0) {
    throw DomainError("mean vector must have positive even length");
  }
  if (covariance_.rows() != mean_.size() || covariance_.cols() != mean_.size()) {
    throw DomainError("covariance shape does not match mean length");
  }
  const double asym = (covariance_ - covariance_.transpose()).cwiseAbs().maxCoeff();
  if (!(asym <= tol * std::max(1.0, covariance_.cwiseAbs().maxCoeff()))) {
    throw DomainError("covariance is not symmetric");
  }
}

Complex GaussianState::amplitude(std::size_t mode) const {
  check_mode(mode, mode_count());
  const auto k = static_cast<Eigen::Index>(2 * mode);
  return Complex(mean_(k), mean_(k + 1)) / std::numbers::sqrt2;
}

double GaussianState::uncertainty_margin() const {
  // H = V + (i/2) Omega is Hermitian; its real form [[V, -Omega/2], [Omega/2, V]]
  // has the same spectrum with doubled multiplicity.
  const Eigen::Index n = covariance_.rows();
  const Eigen::MatrixXd half_omega = 0.5 * symplectic_form(mode_count());
  Eigen::MatrixXd real_form(2 * n, 2 * n);
  real_form << covariance_, -half_omega, half_omega, covariance_;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(real_form, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double symplectic_residual(const Eigen::MatrixXd &matrix) {
  const auto modes = static_cast<std::size_t>(matrix.rows() / 2);
  const Eigen::MatrixXd omega = symplectic_form(modes);
  return (matrix * omega * matrix.transpose() - omega).cwiseAbs().maxCoeff();
}

SymplecticMap::SymplecticMap(Eigen::MatrixXd matrix, double tol) : matrix_(std::move(matrix)) {
  if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols() || matrix_.rows() % 2 != 0) {
    throw DomainError("symplectic map must be a non-empty square matrix of even size");
  }
  const double r = residual();
  if (!(r <= tol)) {
    throw DomainError("matrix is not symplectic (residual " + std::to_string(r) + ")");
  }
}

SymplecticMap SymplecticMap::identity(std::size_t mode_count) {
  if (mode_count == 0) throw DomainError("mode count must be at least 1");
  const auto n = static_cast<Eigen::Index>(2 * mode_count);
  return SymplecticMap(Eigen::MatrixXd::Identity(n, n));
}

double SymplecticMap::residual() const { return symplectic_residual(matrix_); }

SymplecticMap SymplecticMap::operator*(const SymplecticMap &other) const {
  if (matrix_.cols() != other.matrix_.rows()) {
    throw DomainError("symplectic map size mismatch");
  }
  // Rounding accumulates over long products; the factors were validated.
  return SymplecticMap(matrix_ * other.matrix_, std::numeric_limits<double>::infinity());
}

GaussianState vacuum_state(std::size_t mode_count) {
  if (mode_count == 0) throw DomainError("vacuum_state: mode count must be at least 1");
  const auto n = static_cast<Eigen::Index>(2 * mode_count);
  return GaussianState(Eigen::VectorXd::Zero(n), 0.5 * Eigen::MatrixXd::Identity(n, n));
}

GaussianState coherent_state(std::span<const Complex> amplitudes) {
  if (amplitudes.empty()) throw DomainError("coherent_state: amplitude list is empty");
  const auto n = static_cast<Eigen::Index>(2 * amplitudes.size());
  Eigen::VectorXd mean(n);
  for (std::size_t j = 0; j < amplitudes.size(); ++j) {
    mean.segment<2>(static_cast<Eigen::Index>(2 * j)) = quadratures_of(amplitudes[j]);
  }
  return GaussianState(std::move(mean), 0.5 * Eigen::MatrixXd::Identity(n, n));
}

GaussianState apply_map(const GaussianState &state, const SymplecticMap &map) {
  if (map.mode_count() != state.mode_count()) {
    throw DomainError("apply_map: map acts on " + std::to_string(map.mode_count()) +
                      " modes, state has " + std::to_string(state.mode_count()));
  }
  const Eigen::MatrixXd &s = map.matrix();
  Eigen::MatrixXd cov = s * state.covariance() * s.transpose();
  // Symmetrize away rounding so the result passes the constructor check.
  cov = 0.5 * (cov + cov.transpose()).eval();
  return GaussianState(s * state.mean(), std::move(cov));
}

GaussianState marginal(const GaussianState &state, std::span<const std::size_t> modes) {
  if (modes.empty()) throw DomainError("marginal: empty mode selection");
  const std::size_t count = state.mode_count();
  std::vector<bool> seen(count, false);
  for (std::size_t m : modes) {
    check_mode(m, count);
    if (seen[m]) throw DomainError("marginal: repeated mode index " + std::to_string(m));
    seen[m] = true;
  }
  const auto n = static_cast<Eigen::Index>(2 * modes.size());
  Eigen::VectorXd mean(n);
  Eigen::MatrixXd cov(n, n);
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const auto ri = static_cast<Eigen::Index>(2 * i);
    const auto si = static_cast<Eigen::Index>(2 * modes[i]);
    mean.segment<2>(ri) = state.mean().segment<2>(si);
    for (std::size_t j = 0; j < modes.size(); ++j) {
      const auto rj = static_cast<Eigen::Index>(2 * j);
      const auto sj = static_cast<Eigen::Index>(2 * modes[j]);
      cov.block<2, 2>(ri, rj) = state.covariance().block<2, 2>(si, sj);
    }
  }
  return GaussianState(std::move(mean), std::move(cov));
}

std::pair<double, double> quadrature_variance(const GaussianState &state, std::size_t mode) {
  check_mode(mode, state.mode_count());
  const auto k = static_cast<Eigen::Index>(2 * mode);
  return {state.covariance()(k, k), state.covariance()(k + 1, k + 1)};
}

double coherent_overlap(const Eigen::Vector2d &mean, const Eigen::Matrix2d &covariance, Complex target) {
  const Eigen::Matrix2d shifted = covariance + 0.5 * Eigen::Matrix2d::Identity();
  const double det = shifted.determinant();
  if (!(det > 0.0) || !std::isfinite(det)) {
    throw DomainError("fidelity_with_coherent: V + I/2 is singular or indefinite");
  }
  const Eigen::Vector2d d = mean - quadratures_of(target);
  const double quad = d.dot(shifted.inverse() * d);
  return std::exp(-0.5 * quad) / std::sqrt(det);
}

double fidelity_with_coherent(const GaussianState &state, std::size_t mode, Complex target) {
  check_mode(mode, state.mode_count());
  const auto k = static_cast<Eigen::Index>(2 * mode);
  return coherent_overlap(state.mean().segment<2>(k), state.covariance().block<2, 2>(k, k), target);
}

}  // namespace pciclone
