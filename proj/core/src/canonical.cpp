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

#include "pciclone/canonical.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace pciclone {

CanonicalTransform::CanonicalTransform(Eigen::MatrixXcd m, Eigen::MatrixXcd l)
    : m_(std::move(m)), l_(std::move(l)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) {
    throw DomainError("canonical transform: M must be a non-empty square matrix");
  }
  if (l_.rows() != m_.rows() || l_.cols() != m_.cols()) {
    throw DomainError("canonical transform: M and L differ in shape");
  }
}

CanonicalTransform identity_transform(std::size_t mode_count) {
  if (mode_count == 0) throw DomainError("identity_transform: mode count must be at least 1");
  const auto k = static_cast<Eigen::Index>(mode_count);
  return {Eigen::MatrixXcd::Identity(k, k), Eigen::MatrixXcd::Zero(k, k)};
}

CanonicalTransform compose(const CanonicalTransform &first, const CanonicalTransform &second) {
  if (first.mode_count() != second.mode_count()) {
    throw DomainError("compose: mode counts differ (" + std::to_string(first.mode_count()) + " vs " +
                      std::to_string(second.mode_count()) + ")");
  }
  const auto &m1 = first.m_matrix();
  const auto &l1 = first.l_matrix();
  const auto &m2 = second.m_matrix();
  const auto &l2 = second.l_matrix();
  return {m2 * m1 + l2 * l1.conjugate(), m2 * l1 + l2 * m1.conjugate()};
}

double commutation_residual(const CanonicalTransform &transform) {
  const auto &m = transform.m_matrix();
  const auto &l = transform.l_matrix();
  const auto k = m.rows();
  const double r1 = (m * l.transpose() - l * m.transpose()).cwiseAbs().maxCoeff();
  const double r2 =
      (m * m.adjoint() - l * l.adjoint() - Eigen::MatrixXcd::Identity(k, k)).cwiseAbs().maxCoeff();
  return std::max(r1, r2);
}

SymplecticMap to_symplectic(const CanonicalTransform &transform, double tol) {
  const double r = commutation_residual(transform);
  if (!(r <= tol)) {
    throw DomainError("to_symplectic: transform is not canonical (residual " + std::to_string(r) + ")");
  }
  // sqrt(2) b = (M + L) x + i (M - L) p
  const Eigen::MatrixXcd plus = transform.m_matrix() + transform.l_matrix();
  const Eigen::MatrixXcd minus = transform.m_matrix() - transform.l_matrix();
  const Eigen::Index k = plus.rows();
  Eigen::MatrixXd s(2 * k, 2 * k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      s(2 * i, 2 * j) = plus(i, j).real();
      s(2 * i, 2 * j + 1) = -minus(i, j).imag();
      s(2 * i + 1, 2 * j) = plus(i, j).imag();
      s(2 * i + 1, 2 * j + 1) = minus(i, j).real();
    }
  }
  // The commutation check already bounds the symplectic residual.
  return SymplecticMap(std::move(s), std::numeric_limits<double>::infinity());
}

CanonicalTransform from_symplectic(const Eigen::MatrixXd &matrix) {
  if (matrix.rows() == 0 || matrix.rows() != matrix.cols() || matrix.rows() % 2 != 0) {
    throw DomainError("from_symplectic: matrix must be square with even size");
  }
  const Eigen::Index k = matrix.rows() / 2;
  Eigen::MatrixXcd m(k, k);
  Eigen::MatrixXcd l(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      const double xx = matrix(2 * i, 2 * j);
      const double xp = matrix(2 * i, 2 * j + 1);
      const double px = matrix(2 * i + 1, 2 * j);
      const double pp = matrix(2 * i + 1, 2 * j + 1);
      m(i, j) = Complex(0.5 * (xx + pp), 0.5 * (px - xp));
      l(i, j) = Complex(0.5 * (xx - pp), 0.5 * (px + xp));
    }
  }
  return {std::move(m), std::move(l)};
}

CanonicalTransform dft_transform(std::size_t mode_count, bool inverse) {
  if (mode_count == 0) throw DomainError("dft_transform: mode count must be at least 1");
  const auto k = static_cast<Eigen::Index>(mode_count);
  const double norm = 1.0 / std::sqrt(static_cast<double>(k));
  Eigen::MatrixXcd m(k, k);
  for (Eigen::Index row = 0; row < k; ++row) {
    for (Eigen::Index col = 0; col < k; ++col) {
      // Reduce l*k mod K first so the angle stays in [0, 2 pi).
      const auto phase_index = (row * col) % k;
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(phase_index) / static_cast<double>(k);
      m(row, col) = std::polar(norm, angle);
    }
  }
  if (inverse) m.adjointInPlace();
  return {std::move(m), Eigen::MatrixXcd::Zero(k, k)};
}

CanonicalTransform pcia_transform(double gain) {
  if (!(gain >= 1.0) || !std::isfinite(gain)) {
    throw DomainError("pcia_transform: gain must be finite and >= 1 (got " + std::to_string(gain) + ")");
  }
  const double direct = std::sqrt(gain);
  const double conj = std::sqrt(gain - 1.0);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(2, 2);
  m(0, 0) = direct;
  m(1, 1) = direct;
  l(0, 1) = conj;
  l(1, 0) = conj;
  return {std::move(m), std::move(l)};
}

CanonicalTransform embed(const CanonicalTransform &transform, std::span<const std::size_t> targets,
                         std::size_t total_modes) {
  if (targets.size() != transform.mode_count()) {
    throw DomainError("embed: " + std::to_string(targets.size()) + " targets for a " +
                      std::to_string(transform.mode_count()) + "-mode transform");
  }
  std::vector<bool> used(total_modes, false);
  for (std::size_t t : targets) {
    if (t >= total_modes) {
      throw DomainError("embed: target " + std::to_string(t) + " exceeds " + std::to_string(total_modes) +
                        " modes");
    }
    if (used[t]) throw DomainError("embed: target " + std::to_string(t) + " listed twice");
    used[t] = true;
  }
  CanonicalTransform out = identity_transform(total_modes);
  Eigen::MatrixXcd m = out.m_matrix();
  Eigen::MatrixXcd l = out.l_matrix();
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const auto gi = static_cast<Eigen::Index>(targets[i]);
    for (std::size_t j = 0; j < targets.size(); ++j) {
      const auto gj = static_cast<Eigen::Index>(targets[j]);
      m(gi, gj) = transform.m_matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      l(gi, gj) = transform.l_matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return {std::move(m), std::move(l)};
}

}  // namespace pciclone
