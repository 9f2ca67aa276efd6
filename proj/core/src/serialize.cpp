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

#include "pciclone/serialize.hpp"

#include <vector>

namespace pciclone {

namespace {

template <typename T>
nlohmann::json optional_json(const std::optional<T> &value) {
  return value ? nlohmann::json(*value) : nlohmann::json(nullptr);
}

nlohmann::json vec2(const Eigen::Vector2d &v) { return nlohmann::json::array({v(0), v(1)}); }

nlohmann::json mat2(const Eigen::Matrix2d &m) {
  return nlohmann::json::array({nlohmann::json::array({m(0, 0), m(0, 1)}), nlohmann::json::array({m(1, 0), m(1, 1)})});
}

}  // namespace

std::string_view to_string(InputRole role) {
  switch (role) {
    case InputRole::kSignal: return "signal";
    case InputRole::kConjugate: return "conjugate";
    case InputRole::kIdlePort: return "idle_port";
    case InputRole::kCloneVacuum: return "clone_vacuum";
    case InputRole::kAnticloneVacuum: return "anticlone_vacuum";
  }
  return "unknown";
}

std::string_view to_string(OutputRole role) {
  switch (role) {
    case OutputRole::kClone: return "clone";
    case OutputRole::kAnticlone: return "anticlone";
    case OutputRole::kResidual: return "residual";
  }
  return "unknown";
}

void to_json(nlohmann::json &j, const CloningConfig &config) {
  j = {{"n_inputs", config.n_inputs()},
       {"n_conj", config.n_conj()},
       {"m_clones", config.m_clones()},
       {"m_anticlones", config.m_anticlones()}};
}

void to_json(nlohmann::json &j, const NoiseReport &r) {
  j = {{"config", r.config},
       {"gain", r.gain},
       {"n_th_clone", r.n_th_clone},
       {"n_th_anticlone", optional_json(r.n_th_anticlone)},
       {"var_clone", r.var_clone},
       {"var_anticlone", optional_json(r.var_anticlone)},
       {"f_clone", r.f_clone},
       {"f_anticlone", optional_json(r.f_anticlone)},
       {"n_th_mean", r.n_th_mean},
       {"baseline_var", r.baseline_var},
       {"baseline_f", r.baseline_f},
       {"baseline_f_anticlone", r.baseline_f_anticlone},
       {"measurement_limit_noise", r.measurement_limit_noise}};
}

void to_json(nlohmann::json &j, const StructuralCheck &c) {
  j = {{"commutation_residual", c.commutation_residual},
       {"symplectic_residual", c.symplectic_residual},
       {"mean_error", c.mean_error},
       {"clone_spread", c.clone_spread},
       {"variance_error", c.variance_error}};
}

void to_json(nlohmann::json &j, const MachineLayout &layout) {
  std::vector<std::string_view> inputs;
  std::vector<std::string_view> outputs;
  for (auto r : layout.input_roles) inputs.push_back(to_string(r));
  for (auto r : layout.output_roles) outputs.push_back(to_string(r));
  j = {{"total_modes", layout.total_modes},
       {"input_roles", inputs},
       {"output_roles", outputs},
       {"clone_modes", layout.clone_modes},
       {"anticlone_modes", layout.anticlone_modes},
       {"amplifier_signal_mode", layout.amplifier_signal_mode},
       {"amplifier_conj_mode", layout.amplifier_conj_mode}};
}

void to_json(nlohmann::json &j, const SearchResult &r) {
  j = {{"alpha", r.problem.alpha},
       {"beta", r.problem.beta},
       {"gamma", r.problem.gamma},
       {"m11", r.m11},
       {"m12", r.m12},
       {"m13", r.m13},
       {"l11", r.l11},
       {"l12", r.l12},
       {"l13", r.l13},
       {"multiplier", r.multiplier},
       {"objective", r.objective},
       {"reduced_residual", r.reduced_residual},
       {"full_residual", r.full_residual},
       {"mean_residual", r.mean_residual},
       {"gain", r.gain},
       {"iterations", r.iterations},
       {"converged_starts", r.converged_starts},
       {"start_spread", r.start_spread},
       {"converged", r.converged}};
}

void to_json(nlohmann::json &j, const AsymmetryPoint &p) { j = {{"a", p.a}, {"gain", p.gain}, {"n_th", p.n_th}}; }

void to_json(nlohmann::json &j, const AsymmetryResult &r) {
  j = {{"n", r.n}, {"m_clones", r.m_clones}, {"a_star", r.a_star}, {"gain", r.gain}, {"n_th", r.n_th},
       {"trace", r.trace}};
}

void to_json(nlohmann::json &j, const ModeMoments &m) {
  j = {{"mean", vec2(m.mean)}, {"covariance", mat2(m.covariance)}, {"se_mean", vec2(m.se_mean)},
       {"se_var", vec2(m.se_var)}};
}

void to_json(nlohmann::json &j, const EmpiricalMoments &m) {
  j = {{"sample_count", m.sample_count},
       {"seed", m.seed},
       {"psi", nlohmann::json::array({m.psi.real(), m.psi.imag()})},
       {"modes", m.modes}};
}

void to_json(nlohmann::json &j, const ModeComparison &c) {
  j = {{"mode", c.mode},
       {"role", to_string(c.role)},
       {"expected_mean", vec2(c.expected_mean)},
       {"expected_var", c.expected_var},
       {"expected_fidelity", c.expected_fidelity},
       {"empirical_fidelity", c.empirical_fidelity},
       {"se_fidelity", c.se_fidelity},
       {"z_mean", vec2(c.z_mean)},
       {"z_var", vec2(c.z_var)},
       {"z_fidelity", c.z_fidelity}};
}

void to_json(nlohmann::json &j, const ComparisonSummary &s) {
  j = {{"modes", s.modes}, {"max_abs_z", s.max_abs_z}, {"threshold", s.threshold}, {"flagged", s.flagged}};
}

}  // namespace pciclone
