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

#ifndef PCICLONE_GAUSSIAN_HPP
#define PCICLONE_GAUSSIAN_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pciclone/errors.hpp"

namespace pciclone {

using Complex = std::complex<double>;

/// Symplectic form for K modes in interleaved (x1, p1, ..., xK, pK) order:
/// block diagonal with [[0, 1], [-1, 0]] blocks.
Eigen::MatrixXd symplectic_form(std::size_t mode_count);

/// First and second moments of a K-mode Gaussian state. Units are hbar = 1,
/// so the vacuum has quadrature variance 1/2, and a = (x + ip) / sqrt(2).
class GaussianState {
 public:
  /// Throws DomainError on a dimension mismatch or an asymmetric covariance.
  GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd covariance, double tol = kStructuralTol);

  std::size_t mode_count() const { return static_cast<std::size_t>(mean_.size() / 2); }
  const Eigen::VectorXd &mean() const { return mean_; }
  const Eigen::MatrixXd &covariance() const { return covariance_; }

  /// Complex amplitude <a_j> = (<x_j> + i <p_j>) / sqrt(2).
  Complex amplitude(std::size_t mode) const;

  /// Smallest eigenvalue of covariance + (i/2) Omega, computed on its real
  /// 4K x 4K embedding. Non-negative (up to rounding) for physical states.
  double uncertainty_margin() const;
  bool is_physical(double tol = kStructuralTol) const { return uncertainty_margin() >= -tol; }

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd covariance_;
};

/// Real 2K x 2K matrix S acting on quadratures; canonical iff S Omega S^T = Omega.
class SymplecticMap {
 public:
  /// Throws DomainError unless the matrix is square with even size and
  /// symplectic within `tol`.
  explicit SymplecticMap(Eigen::MatrixXd matrix, double tol = kStructuralTol);

  static SymplecticMap identity(std::size_t mode_count);

  std::size_t mode_count() const { return static_cast<std::size_t>(matrix_.rows() / 2); }
  const Eigen::MatrixXd &matrix() const { return matrix_; }

  /// max |S Omega S^T - Omega|.
  double residual() const;

  /// (*this) * other, i.e. apply `other` first.
  SymplecticMap operator*(const SymplecticMap &other) const;

 private:
  Eigen::MatrixXd matrix_;
};

/// max |S Omega S^T - Omega| for an arbitrary square matrix.
double symplectic_residual(const Eigen::MatrixXd &matrix);

GaussianState vacuum_state(std::size_t mode_count);
GaussianState coherent_state(std::span<const Complex> amplitudes);

/// mean' = S mean, covariance' = S covariance S^T.
GaussianState apply_map(const GaussianState &state, const SymplecticMap &map);

/// Reduced state on `modes`, in the order given.
GaussianState marginal(const GaussianState &state, std::span<const std::size_t> modes);

/// (Var x, Var p) of one mode.
std::pair<double, double> quadrature_variance(const GaussianState &state, std::size_t mode);

/// Overlap <target| rho_mode |target> with a coherent state, from the mode's
/// 2x2 covariance V and its mean offset d from the target:
///   F = exp(-d^T (V + I/2)^{-1} d / 2) / sqrt(det(V + I/2)).
double fidelity_with_coherent(const GaussianState &state, std::size_t mode, Complex target);

/// Same overlap evaluated directly on a single-mode mean and covariance.
double coherent_overlap(const Eigen::Vector2d &mean, const Eigen::Matrix2d &covariance, Complex target);

/// Quadrature pair (sqrt(2) Re psi, sqrt(2) Im psi).
Eigen::Vector2d quadratures_of(Complex amplitude);

}  // namespace pciclone

#endif  // PCICLONE_GAUSSIAN_HPP
