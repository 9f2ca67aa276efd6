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

#ifndef PCICLONE_OPTIMIZER_HPP
#define PCICLONE_OPTIMIZER_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pciclone/canonical.hpp"

namespace pciclone {

struct SearchOptions {
  std::uint64_t seed = 1;
  int restarts = 12;
  /// Final KKT tolerance (stationarity and reduced constraint).
  double tol = 1e-12;
  int max_outer_iterations = 60;
  int max_inner_iterations = 200;
};

/// Reduced amplifier-design problem for output mode b1 of a three-mode
/// transform (signal a1, conjugate a2, auxiliary a3). Row-1 coefficients
/// are real and non-negative by phase choice, and the mean conditions
///   alpha M11 + beta L12 = gamma,   beta M12 + alpha L11 = 0
/// eliminate two of the six. What remains is minimized subject only to the
/// row normalization sum_j M1j^2 - L1j^2 = 1.
struct AmplifierSearchProblem {
  double alpha;
  double beta;
  double gamma;
};

struct SearchResult {
  AmplifierSearchProblem problem;
  /// Row 1 of M and L, columns (a1, a2, a3).
  double m11 = 0, m12 = 0, m13 = 0;
  double l11 = 0, l12 = 0, l13 = 0;
  double multiplier = 0;
  /// (Delta b1)^2 = (M1j M1j + L1j L1j) / 2.
  double objective = 0;
  /// |sum_j M1j^2 - L1j^2 - 1| at the solution.
  double reduced_residual = 0;
  /// Commutation residual of the full three-mode transform completed
  /// around the solution row.
  double full_residual = 0;
  /// |alpha M11 + beta L12 - gamma| + |beta M12 + alpha L11|.
  double mean_residual = 0;
  /// M11^2.
  double gain = 0;
  int iterations = 0;
  int converged_starts = 0;
  /// Largest distance between the best solution and any other start that
  /// reached the same objective.
  double start_spread = 0;
  bool converged = false;
};

/// Minimizes the output noise of b1 under the reduced constraint with an
/// augmented-Lagrangian method started from `restarts` seeded points, then
/// checks the solution against the full commutation rules. Throws
/// DomainError for gamma < alpha or negative amplitudes and
/// ConvergenceError when no start converges.
SearchResult solve_amplifier(double alpha, double beta, double gamma, const SearchOptions &options = {});

/// Completes a single canonical output row (x- and p-rows of S, satisfying
/// x Omega p^T = 1) to a full symplectic matrix by symplectic Gram-Schmidt.
/// The given pair becomes mode 0.
Eigen::MatrixXd complete_symplectic(const Eigen::VectorXd &x_row, const Eigen::VectorXd &p_row);

struct AsymmetryOptions {
  double grid_step = 1e-3;
  double refine_tol = 1e-9;
};

struct AsymmetryPoint {
  double a;
  double gain;
  double n_th;
};

struct AsymmetryResult {
  double n;
  double m_clones;
  double a_star;
  double gain;
  double n_th;
  std::vector<AsymmetryPoint> trace;
};

/// Global minimizer of the clone noise over the conjugate fraction
/// a = N'/n in [max(0, 1 - M/n), 1): grid scan then golden-section
/// refinement around the best grid point. Ties go to the smallest a.
AsymmetryResult minimize_asymmetry(double n, double m_clones, const AsymmetryOptions &options = {});

/// Number of strict interior local minima along a sampled trace.
std::size_t count_local_minima(const std::vector<AsymmetryPoint> &trace);

}  // namespace pciclone

#endif  // PCICLONE_OPTIMIZER_HPP
