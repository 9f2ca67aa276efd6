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

#ifndef PCICLONE_MONTECARLO_HPP
#define PCICLONE_MONTECARLO_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "pciclone/cloner.hpp"

namespace pciclone {

/// Version tag of the random-stream derivation used by simulate(). Bump it
/// whenever the mapping (seed, block, mode) -> numbers changes.
inline constexpr int kSampleStreamVersion = 1;

struct SampleConfig {
  std::uint64_t sample_count = 100000;
  std::uint64_t seed = 0;
  Complex psi{0.0, 0.0};
};

struct SimulationOptions {
  /// Samples per independently seeded block.
  std::uint64_t block_size = 8192;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned workers = 0;
};

/// Sample moments of one output mode.
struct ModeMoments {
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  Eigen::Matrix2d covariance = Eigen::Matrix2d::Zero();
  /// Standard errors of the two means, sqrt(Var / n).
  Eigen::Vector2d se_mean = Eigen::Vector2d::Zero();
  /// Standard errors of Var x, Var p: Var sqrt(2 / (n - 1)).
  Eigen::Vector2d se_var = Eigen::Vector2d::Zero();
};

struct EmpiricalMoments {
  std::uint64_t sample_count = 0;
  std::uint64_t seed = 0;
  Complex psi{0.0, 0.0};
  std::vector<ModeMoments> modes;
};

/// Draws Wigner samples of the machine input (each mode Gaussian with its
/// coherent mean and covariance I/2), pushes them through the machine's
/// symplectic map and accumulates per-output-mode moments.
///
/// Block b of mode j is drawn from a std::mt19937_64 seeded with
/// splitmix64(splitmix64(seed ^ version) + b) ^ splitmix64(j + 1), through
/// std::normal_distribution. Within a block the mean is taken first and the
/// covariance is accumulated from centered samples; blocks are merged in
/// index order with the pairwise update, so results do not depend on the
/// worker count.
EmpiricalMoments simulate(const Machine &machine, const SampleConfig &config,
                          const SimulationOptions &options = {});

/// Output quadrature samples of one block (one column per sample), exactly
/// as simulate() draws them.
Eigen::MatrixXd sample_block(const Machine &machine, const SampleConfig &config, const SimulationOptions &options,
                             std::uint64_t block);

/// Exact moments of the machine output packaged as EmpiricalMoments with
/// `nominal_samples` used only to size the standard errors.
EmpiricalMoments analytic_moments(const Machine &machine, Complex psi, std::uint64_t nominal_samples);

struct ModeComparison {
  std::size_t mode = 0;
  OutputRole role = OutputRole::kResidual;
  Eigen::Vector2d expected_mean = Eigen::Vector2d::Zero();
  double expected_var = 0.0;
  double expected_fidelity = 0.0;
  double empirical_fidelity = 0.0;
  double se_fidelity = 0.0;
  Eigen::Vector2d z_mean = Eigen::Vector2d::Zero();
  Eigen::Vector2d z_var = Eigen::Vector2d::Zero();
  double z_fidelity = 0.0;
};

struct ComparisonSummary {
  std::vector<ModeComparison> modes;
  double max_abs_z = 0.0;
  double threshold = 5.0;
  bool flagged = false;
};

/// z-scores of the sampled moments against the closed-form report. Clones
/// are compared to psi with variance 1/2 + n_th_clone, anticlones to
/// conj(psi) with 1/2 + n_th_anticlone, residual modes to the vacuum.
/// Throws DomainError when the mode count disagrees with the layout.
ComparisonSummary compare_to_analytic(const EmpiricalMoments &emp, const NoiseReport &report,
                                      const MachineLayout &layout, double threshold = 5.0);

/// Delta-method standard error of fidelity_with_coherent on sampled moments.
double fidelity_standard_error(const ModeMoments &moments, std::uint64_t sample_count, Complex target);

}  // namespace pciclone

#endif  // PCICLONE_MONTECARLO_HPP
