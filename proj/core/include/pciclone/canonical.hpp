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

#ifndef PCICLONE_CANONICAL_HPP
#define PCICLONE_CANONICAL_HPP

#include <cstddef>
#include <span>

#include <Eigen/Dense>

#include "pciclone/errors.hpp"
#include "pciclone/gaussian.hpp"

namespace pciclone {

/// Linear canonical transformation b = M a + L a^dagger on K bosonic modes.
///
/// The commutation rules [b_i, b_k] = 0 and [b_i, b_k^dagger] = delta_ik hold
/// iff M L^T - L M^T = 0 and M M^H - L L^H = I. The constructor only checks
/// shapes; use commutation_residual() to test canonicity.
class CanonicalTransform {
 public:
  CanonicalTransform(Eigen::MatrixXcd m, Eigen::MatrixXcd l);

  std::size_t mode_count() const { return static_cast<std::size_t>(m_.rows()); }
  const Eigen::MatrixXcd &m_matrix() const { return m_; }
  const Eigen::MatrixXcd &l_matrix() const { return l_; }

 private:
  Eigen::MatrixXcd m_;
  Eigen::MatrixXcd l_;
};

CanonicalTransform identity_transform(std::size_t mode_count);

/// `second` applied after `first`:
///   M = M2 M1 + L2 conj(L1),  L = M2 L1 + L2 conj(M1).
CanonicalTransform compose(const CanonicalTransform &first, const CanonicalTransform &second);

/// Max-norm of both commutation residuals, M L^T - L M^T and M M^H - L L^H - I.
double commutation_residual(const CanonicalTransform &transform);

/// Quadrature image of the transform under a = (x + ip)/sqrt(2). Throws
/// DomainError when the commutation residual exceeds `tol`.
SymplecticMap to_symplectic(const CanonicalTransform &transform, double tol = kStructuralTol);

/// Inverse of to_symplectic for any real 2K x 2K matrix (no canonicity check).
CanonicalTransform from_symplectic(const Eigen::MatrixXd &matrix);

/// Unitary K-mode discrete Fourier network, L = 0 and
/// M_lk = exp(2 pi i l k / K) / sqrt(K). Output 0 collects the uniform sum of
/// the inputs (concentration). With `inverse` the conjugate transpose is
/// returned, whose column 0 spreads input 0 evenly over all outputs
/// (distribution).
CanonicalTransform dft_transform(std::size_t mode_count, bool inverse = false);

/// Two-mode phase-conjugated-inputs amplifier of gain G >= 1:
///   b1 = sqrt(G) a1 + sqrt(G-1) a2^dagger,  b2 = sqrt(G-1) a1^dagger + sqrt(G) a2.
CanonicalTransform pcia_transform(double gain);

/// Acts as `transform` on `targets` (in order) and as the identity on the
/// remaining modes of a `total_modes` system.
CanonicalTransform embed(const CanonicalTransform &transform, std::span<const std::size_t> targets,
                         std::size_t total_modes);

}  // namespace pciclone

#endif  // PCICLONE_CANONICAL_HPP
