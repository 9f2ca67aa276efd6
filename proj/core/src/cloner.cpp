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

#include "pciclone/cloner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

namespace pciclone {

CloningConfig::CloningConfig(int n_inputs, int n_conj, int m_clones)
    : n_inputs_(n_inputs), n_conj_(n_conj), m_clones_(m_clones) {
  if (n_inputs < 0) throw DomainError("N must be non-negative (got " + std::to_string(n_inputs) + ")");
  if (n_conj < 0) throw DomainError("N' must be non-negative (got " + std::to_string(n_conj) + ")");
  if (n_inputs + n_conj < 1) throw DomainError("N + N' must be at least 1");
  if (m_clones < 1) throw DomainError("M must be at least 1 (got " + std::to_string(m_clones) + ")");
  if (m_clones < n_inputs) {
    throw DomainError("M >= N required (got M=" + std::to_string(m_clones) + " < N=" +
                      std::to_string(n_inputs) + "); attenuation is not handled");
  }
}

double gain_from_amplitudes(double alpha, double beta, double gamma) {
  if (!(alpha >= 0.0) || !(beta >= 0.0) || !(gamma >= 0.0) || !std::isfinite(alpha + beta + gamma)) {
    throw DomainError("gain_from_amplitudes: amplitudes must be finite and non-negative");
  }
  if (gamma < alpha) {
    throw DomainError("gain_from_amplitudes: gamma < alpha is the attenuation regime");
  }
  if (alpha == 0.0 && beta == 0.0) {
    throw DomainError("gain_from_amplitudes: alpha and beta cannot both vanish");
  }
  const double root = std::sqrt(gamma * gamma - alpha * alpha + beta * beta);
  const double sqrt_gain = (gamma * gamma + beta * beta) / (alpha * gamma + beta * root);
  return sqrt_gain * sqrt_gain;
}

double gain_from_counts(const CloningConfig &config) {
  const double n = config.n_inputs();
  const double nc = config.n_conj();
  const double m = config.m_clones();
  const double mc = config.m_anticlones();
  // (sqrt(N'M') - sqrt(NM)) / (N' - N), rationalized.
  const double sqrt_gain = (m + nc) / (std::sqrt(n * m) + std::sqrt(nc * mc));
  return std::max(1.0, sqrt_gain * sqrt_gain);
}

namespace {

std::vector<std::size_t> iota_from(std::size_t first, std::size_t count) {
  std::vector<std::size_t> v(count);
  std::iota(v.begin(), v.end(), first);
  return v;
}

}  // namespace

Machine build_machine(const CloningConfig &config) {
  const auto n = static_cast<std::size_t>(config.n_inputs());
  const auto nc = static_cast<std::size_t>(config.n_conj());
  const auto m = static_cast<std::size_t>(config.m_clones());
  const auto mc = static_cast<std::size_t>(config.m_anticlones());

  const std::size_t signal_slots = std::max<std::size_t>(n, 1);
  const std::size_t conj_slots = std::max<std::size_t>(nc, 1);
  const std::size_t clone_vacua = m - 1;
  const std::size_t anticlone_vacua = mc > 0 ? mc - 1 : 0;

  MachineLayout layout;
  layout.total_modes = signal_slots + conj_slots + clone_vacua + anticlone_vacua;
  layout.amplifier_signal_mode = 0;
  layout.amplifier_conj_mode = signal_slots;

  const std::size_t clone_vac_base = signal_slots + conj_slots;
  const std::size_t anti_vac_base = clone_vac_base + clone_vacua;

  layout.input_roles.reserve(layout.total_modes);
  layout.input_roles.insert(layout.input_roles.end(), signal_slots, n > 0 ? InputRole::kSignal : InputRole::kIdlePort);
  layout.input_roles.insert(layout.input_roles.end(), conj_slots, nc > 0 ? InputRole::kConjugate : InputRole::kIdlePort);
  layout.input_roles.insert(layout.input_roles.end(), clone_vacua, InputRole::kCloneVacuum);
  layout.input_roles.insert(layout.input_roles.end(), anticlone_vacua, InputRole::kAnticloneVacuum);

  layout.clone_modes.push_back(layout.amplifier_signal_mode);
  for (std::size_t k = 0; k < clone_vacua; ++k) layout.clone_modes.push_back(clone_vac_base + k);
  if (mc > 0) {
    layout.anticlone_modes.push_back(layout.amplifier_conj_mode);
    for (std::size_t k = 0; k < anticlone_vacua; ++k) layout.anticlone_modes.push_back(anti_vac_base + k);
  }
  layout.output_roles.assign(layout.total_modes, OutputRole::kResidual);
  for (std::size_t c : layout.clone_modes) layout.output_roles[c] = OutputRole::kClone;
  for (std::size_t c : layout.anticlone_modes) layout.output_roles[c] = OutputRole::kAnticlone;

  const std::size_t total = layout.total_modes;
  const double gain = gain_from_counts(config);

  // (i) concentrate each input group into its first slot.
  const auto signal_group = iota_from(0, signal_slots);
  const auto conj_group = iota_from(signal_slots, conj_slots);
  CanonicalTransform network = compose(embed(dft_transform(signal_slots), signal_group, total),
                                       embed(dft_transform(conj_slots), conj_group, total));

  // (ii) amplifier on the two concentrated modes.
  const std::size_t amp_modes[] = {layout.amplifier_signal_mode, layout.amplifier_conj_mode};
  network = compose(network, embed(pcia_transform(gain), amp_modes, total));

  // (iii) spread b1 over M clones and b2 over M' anticlones.
  network = compose(network, embed(dft_transform(m, true), layout.clone_modes, total));
  if (mc > 0) {
    network = compose(network, embed(dft_transform(mc, true), layout.anticlone_modes, total));
  }

  return Machine{config, gain, std::move(network), std::move(layout)};
}

GaussianState machine_input_state(const MachineLayout &layout, Complex psi) {
  std::vector<Complex> amplitudes(layout.total_modes, Complex(0.0, 0.0));
  for (std::size_t j = 0; j < layout.total_modes; ++j) {
    if (layout.input_roles[j] == InputRole::kSignal) amplitudes[j] = psi;
    if (layout.input_roles[j] == InputRole::kConjugate) amplitudes[j] = std::conj(psi);
  }
  return coherent_state(amplitudes);
}

double standard_clone_noise(int inputs, int clones) {
  if (inputs < 1 || clones < 1) throw DomainError("standard cloner needs at least one input and one clone");
  return std::max(0.0, 1.0 / inputs - 1.0 / clones);
}

double standard_clone_fidelity(int inputs, int clones) {
  if (inputs < 1 || clones < 1) throw DomainError("standard cloner needs at least one input and one clone");
  if (clones <= inputs) return 1.0;
  const double k = inputs;
  const double m = clones;
  return k * m / (k * m + m - k);
}

double measurement_noise(int n_inputs, int n_conj) {
  if (n_inputs < 0 || n_conj < 0) throw DomainError("measurement_noise: counts must be non-negative");
  if (n_inputs + n_conj < 1) throw DomainError("measurement_noise: N + N' must be at least 1");
  const double s = std::sqrt(static_cast<double>(n_inputs)) + std::sqrt(static_cast<double>(n_conj));
  return 1.0 / (s * s);
}

NoiseReport noise_report(const CloningConfig &config) {
  const double gain = gain_from_counts(config);
  const int m = config.m_clones();
  const int mc = config.m_anticlones();
  const int total_inputs = config.n_inputs() + config.n_conj();

  NoiseReport r{config, gain, 0.0, std::nullopt, 0.0, std::nullopt, 0.0, std::nullopt, 0.0, 0.0, 0.0, 0.0, 0.0};
  r.n_th_clone = (gain - 1.0) / m;
  r.var_clone = 0.5 + r.n_th_clone;
  r.f_clone = 1.0 / (1.0 + r.n_th_clone);
  if (mc > 0) {
    const double n_th = (gain - 1.0) / mc;
    r.n_th_anticlone = n_th;
    r.var_anticlone = 0.5 + n_th;
    r.f_anticlone = 1.0 / (1.0 + n_th);
  }
  r.n_th_mean = (gain - 1.0) * (mc > 0 ? 2.0 : 1.0) / (m + mc);
  r.baseline_var = 0.5 + standard_clone_noise(total_inputs, m);
  r.baseline_f = standard_clone_fidelity(total_inputs, m);
  r.baseline_f_anticlone = static_cast<double>(total_inputs) / (total_inputs + 1.0);
  r.measurement_limit_noise = measurement_noise(config.n_inputs(), config.n_conj());
  return r;
}

StructuralCheck check_machine(const Machine &machine, std::span<const Complex> psis) {
  StructuralCheck out;
  out.commutation_residual = commutation_residual(machine.transform);
  const SymplecticMap map = to_symplectic(machine.transform, std::numeric_limits<double>::infinity());
  out.symplectic_residual = map.residual();
  const NoiseReport report = noise_report(machine.config);
  const MachineLayout &layout = machine.layout;

  for (const Complex psi : psis) {
    const GaussianState state = apply_map(machine_input_state(layout, psi), map);
    const Eigen::MatrixXd &cov = state.covariance();
    auto variance_gap = [&](std::size_t mode, double expected) {
      const auto [vx, vp] = quadrature_variance(state, mode);
      out.variance_error = std::max({out.variance_error, std::abs(vx - expected), std::abs(vp - expected)});
    };
    const auto first = static_cast<Eigen::Index>(2 * layout.clone_modes.front());
    for (std::size_t mode : layout.clone_modes) {
      const auto k = static_cast<Eigen::Index>(2 * mode);
      out.mean_error = std::max(out.mean_error, std::abs(state.amplitude(mode) - psi));
      out.clone_spread = std::max(out.clone_spread, (cov.block<2, 2>(k, k) - cov.block<2, 2>(first, first)).cwiseAbs().maxCoeff());
      variance_gap(mode, report.var_clone);
    }
    for (std::size_t mode : layout.anticlone_modes) {
      out.mean_error = std::max(out.mean_error, std::abs(state.amplitude(mode) - std::conj(psi)));
      variance_gap(mode, *report.var_anticlone);
    }
    for (std::size_t mode = 0; mode < layout.total_modes; ++mode) {
      if (layout.output_roles[mode] == OutputRole::kResidual) {
        out.mean_error = std::max(out.mean_error, std::abs(state.amplitude(mode)));
      }
    }
  }
  return out;
}

double asymmetry_gain(double n, double m_clones, double a) {
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("asymmetry_gain: n must be positive");
  if (!(m_clones > 0.0) || !std::isfinite(m_clones)) throw DomainError("asymmetry_gain: M must be positive");
  if (!(a >= 0.0 && a <= 1.0)) throw DomainError("asymmetry_gain: a must lie in [0, 1]");
  const double r = m_clones / n;
  // M >= N = (1 - a) n, with slack for a computed on a grid.
  if (r < (1.0 - a) - 1e-12) {
    throw DomainError("asymmetry_gain: M < (1 - a) n is the attenuation regime");
  }
  // Rationalized form: equal to the (2a - 1) quotient, finite at a = 1/2.
  const double conj_branch = std::sqrt(std::max(0.0, a * (r + 2.0 * a - 1.0)));
  const double direct_branch = std::sqrt((1.0 - a) * r);
  const double sqrt_gain = (r + a) / (direct_branch + conj_branch);
  return std::max(1.0, sqrt_gain * sqrt_gain);
}

double asymmetry_noise(double n, double m_clones, double a) {
  return (asymmetry_gain(n, m_clones, a) - 1.0) / m_clones;
}

double p_function_density(double n_th, Complex xi, Complex psi) {
  if (!(n_th > 0.0) || !std::isfinite(n_th)) {
    throw DomainError("p_function_density: n_th must be positive (the n_th = 0 limit is a delta)");
  }
  return std::exp(-std::norm(xi - psi) / n_th) / (std::numbers::pi * n_th);
}

}  // namespace pciclone
