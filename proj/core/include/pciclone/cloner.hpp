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

#ifndef PCICLONE_CLONER_HPP
#define PCICLONE_CLONER_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pciclone/canonical.hpp"
#include "pciclone/gaussian.hpp"

namespace pciclone {

/// Input/output counts of a phase-conjugated-inputs cloner: N copies of
/// |psi>, N' copies of |psi*>, M clones. The anticlone count follows from
/// N - N' = M - M'.
class CloningConfig {
 public:
  /// Throws DomainError naming the violated bound: N + N' >= 1, M >= 1 and
  /// M >= N (attenuation is not a cloning regime).
  CloningConfig(int n_inputs, int n_conj, int m_clones);

  int n_inputs() const { return n_inputs_; }
  int n_conj() const { return n_conj_; }
  int m_clones() const { return m_clones_; }
  int m_anticlones() const { return m_clones_ + n_conj_ - n_inputs_; }

  bool operator==(const CloningConfig &) const = default;

 private:
  int n_inputs_;
  int n_conj_;
  int m_clones_;
};

/// Closed-form figures of merit for one configuration. Anticlone fields are
/// empty when the machine emits no anticlones (M' = 0).
struct NoiseReport {
  CloningConfig config;
  double gain;
  double n_th_clone;
  std::optional<double> n_th_anticlone;
  double var_clone;
  std::optional<double> var_anticlone;
  double f_clone;
  std::optional<double> f_anticlone;
  /// Added photons per output averaged over all M + M' clones and
  /// anticlones, (M n_th_clone + M' n_th_anticlone) / (M + M').
  double n_th_mean;
  /// Standard (N + N') -> M cloner fed only with copies of |psi>.
  double baseline_var;
  double baseline_f;
  /// Fidelity of the anticlones a standard cloner produces, K / (K + 1).
  double baseline_f_anticlone;
  /// 1 / (sqrt(N) + sqrt(N'))^2, the M -> infinity noise.
  double measurement_limit_noise;
};

enum class InputRole { kSignal, kConjugate, kIdlePort, kCloneVacuum, kAnticloneVacuum };
enum class OutputRole { kClone, kAnticlone, kResidual };

/// Slot assignment of the K-mode machine. Inputs are laid out as
///   [signal group][conjugate group][clone vacua][anticlone vacua]
/// where the signal group has max(N, 1) slots (an idle vacuum port when
/// N = 0) and likewise for the conjugate group. The amplifier acts on the
/// first slot of each group; clone l = 0 leaves on the first signal slot
/// and clone l > 0 on the (l-1)-th clone vacuum slot.
struct MachineLayout {
  std::size_t total_modes = 0;
  std::vector<InputRole> input_roles;
  std::vector<OutputRole> output_roles;
  std::vector<std::size_t> clone_modes;
  std::vector<std::size_t> anticlone_modes;
  std::size_t amplifier_signal_mode = 0;
  std::size_t amplifier_conj_mode = 0;
};

struct Machine {
  CloningConfig config;
  double gain;
  CanonicalTransform transform;
  MachineLayout layout;
};

/// Gain of the optimal amplifier mapping means (alpha psi, beta psi*) to
/// gamma psi. Evaluated in the rationalized form
///   sqrt(G) = (gamma^2 + beta^2) / (alpha gamma + beta sqrt(gamma^2 - alpha^2 + beta^2)),
/// which has no singularity at alpha = beta. Amplitudes must be
/// non-negative with gamma >= alpha and (alpha, beta) != (0, 0).
double gain_from_amplitudes(double alpha, double beta, double gamma);

/// Gain in terms of counts, sqrt(G) = (sqrt(N'M') - sqrt(NM)) / (N' - N),
/// with the balanced limit (M + N)^2 / (4MN) at N = N'.
double gain_from_counts(const CloningConfig &config);

/// Builds the concentrate / amplify / distribute network.
Machine build_machine(const CloningConfig &config);

/// Joint input: psi on signal slots, conj(psi) on conjugate slots, vacuum elsewhere.
GaussianState machine_input_state(const MachineLayout &layout, Complex psi);

NoiseReport noise_report(const CloningConfig &config);

/// Worst deviations of a built machine from its contract over a set of
/// input amplitudes.
struct StructuralCheck {
  double commutation_residual = 0.0;
  double symplectic_residual = 0.0;
  /// max |<c_l> - psi|, |<d_k> - conj(psi)| and |<residual>|.
  double mean_error = 0.0;
  /// Largest entrywise difference between clone covariance blocks.
  double clone_spread = 0.0;
  /// max |Var - (1/2 + n_th)| over clone and anticlone quadratures.
  double variance_error = 0.0;
};

StructuralCheck check_machine(const Machine &machine, std::span<const Complex> psis);

/// Added noise of the standard K -> M cloner, max(0, 1/K - 1/M).
double standard_clone_noise(int inputs, int clones);
/// Fidelity of the standard K -> M cloner, KM / (KM + M - K) for M >= K.
double standard_clone_fidelity(int inputs, int clones);

/// Amplifier gain as a function of the conjugate fraction a = N'/n for n
/// total inputs and M clones (N and N' relaxed to reals):
///   sqrt(G) = (sqrt(a) sqrt(M/n + 2a - 1) - sqrt(M/n) sqrt(1 - a)) / (2a - 1).
/// Requires a in [0, 1] and M >= (1 - a) n.
double asymmetry_gain(double n, double m_clones, double a);

/// Thermal photon number (G - 1)/M along the same curve.
double asymmetry_noise(double n, double m_clones, double a);

/// Gaussian P-function of a clone, exp(-|xi - psi|^2 / n_th) / (pi n_th).
double p_function_density(double n_th, Complex xi, Complex psi);

/// 1 / (sqrt(N) + sqrt(N'))^2.
double measurement_noise(int n_inputs, int n_conj);

}  // namespace pciclone

#endif  // PCICLONE_CLONER_HPP
