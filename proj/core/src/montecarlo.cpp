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

#include "pciclone/montecarlo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <string>
#include <thread>

namespace pciclone {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t block, std::uint64_t mode) {
  const std::uint64_t root = splitmix64(seed ^ static_cast<std::uint64_t>(kSampleStreamVersion));
  return splitmix64(root + block) ^ splitmix64(mode + 1);
}

// Count, mean and centered second moments (per mode, 2x2) of a block.
struct BlockStats {
  std::uint64_t count = 0;
  Eigen::VectorXd mean;
  std::vector<Eigen::Matrix2d> m2;
};

Eigen::MatrixXd draw_block(const Eigen::MatrixXd &s, const Eigen::VectorXd &input_mean, std::uint64_t seed,
                           std::uint64_t block, std::uint64_t count) {
  const Eigen::Index dim = s.rows();
  const auto n = static_cast<Eigen::Index>(count);
  Eigen::MatrixXd z(dim, n);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  for (Eigen::Index mode = 0; mode < dim / 2; ++mode) {
    std::mt19937_64 engine(stream_seed(seed, block, static_cast<std::uint64_t>(mode)));
    normal.reset();
    for (Eigen::Index col = 0; col < n; ++col) {
      z(2 * mode, col) = normal(engine);
      z(2 * mode + 1, col) = normal(engine);
    }
  }
  z.colwise() += input_mean;
  return s * z;
}

BlockStats run_block(const Eigen::MatrixXd &s, const Eigen::VectorXd &input_mean, std::uint64_t seed,
                     std::uint64_t block, std::uint64_t count) {
  const Eigen::MatrixXd y = draw_block(s, input_mean, seed, block, count);
  const Eigen::Index dim = y.rows();
  BlockStats stats;
  stats.count = count;
  stats.mean = y.rowwise().mean();
  const Eigen::MatrixXd centered = y.colwise() - stats.mean;
  stats.m2.resize(static_cast<std::size_t>(dim / 2));
  for (Eigen::Index mode = 0; mode < dim / 2; ++mode) {
    const auto rows = centered.middleRows(2 * mode, 2);
    stats.m2[static_cast<std::size_t>(mode)] = rows * rows.transpose();
  }
  return stats;
}

void merge_into(BlockStats &acc, const BlockStats &next) {
  if (acc.count == 0) {
    acc = next;
    return;
  }
  const double na = static_cast<double>(acc.count);
  const double nb = static_cast<double>(next.count);
  const double total = na + nb;
  const Eigen::VectorXd delta = next.mean - acc.mean;
  acc.mean += delta * (nb / total);
  for (std::size_t mode = 0; mode < acc.m2.size(); ++mode) {
    const Eigen::Vector2d d = delta.segment<2>(static_cast<Eigen::Index>(2 * mode));
    acc.m2[mode] += next.m2[mode] + d * d.transpose() * (na * nb / total);
  }
  acc.count += next.count;
}

ModeMoments finish_mode(const Eigen::Vector2d &mean, const Eigen::Matrix2d &covariance, std::uint64_t n) {
  ModeMoments m;
  m.mean = mean;
  m.covariance = covariance;
  const double count = static_cast<double>(n);
  m.se_mean = (covariance.diagonal() / count).cwiseSqrt();
  m.se_var = covariance.diagonal() * std::sqrt(2.0 / (count - 1.0));
  return m;
}

}  // namespace

EmpiricalMoments simulate(const Machine &machine, const SampleConfig &config, const SimulationOptions &options) {
  if (config.sample_count < 2) throw DomainError("simulate: sample_count must be at least 2");
  if (options.block_size < 2) throw DomainError("simulate: block_size must be at least 2");
  if (machine.layout.total_modes != machine.transform.mode_count()) {
    throw DomainError("simulate: layout and transform disagree on the mode count");
  }
  const SymplecticMap map = to_symplectic(machine.transform);
  const Eigen::VectorXd input_mean = machine_input_state(machine.layout, config.psi).mean();

  const std::uint64_t blocks = (config.sample_count + options.block_size - 1) / options.block_size;
  std::vector<BlockStats> results(blocks);
  auto block_len = [&](std::uint64_t b) {
    return std::min(options.block_size, config.sample_count - b * options.block_size);
  };

  unsigned workers = options.workers != 0 ? options.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, blocks));
  if (workers <= 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) {
      results[b] = run_block(map.matrix(), input_mean, config.seed, b, block_len(b));
    }
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t b = w; b < blocks; b += workers) {
          results[b] = run_block(map.matrix(), input_mean, config.seed, b, block_len(b));
        }
      });
    }
  }

  BlockStats total;
  for (const auto &r : results) merge_into(total, r);

  EmpiricalMoments out;
  out.sample_count = config.sample_count;
  out.seed = config.seed;
  out.psi = config.psi;
  const double denom = static_cast<double>(config.sample_count - 1);
  for (std::size_t mode = 0; mode < total.m2.size(); ++mode) {
    Eigen::Matrix2d cov = total.m2[mode] / denom;
    cov(0, 1) = cov(1, 0) = 0.5 * (cov(0, 1) + cov(1, 0));
    out.modes.push_back(finish_mode(total.mean.segment<2>(static_cast<Eigen::Index>(2 * mode)), cov,
                                    config.sample_count));
  }
  return out;
}

Eigen::MatrixXd sample_block(const Machine &machine, const SampleConfig &config, const SimulationOptions &options,
                             std::uint64_t block) {
  if (options.block_size < 2) throw DomainError("sample_block: block_size must be at least 2");
  const std::uint64_t blocks = (config.sample_count + options.block_size - 1) / options.block_size;
  if (block >= blocks) throw DomainError("sample_block: block index out of range");
  const std::uint64_t count = std::min(options.block_size, config.sample_count - block * options.block_size);
  return draw_block(to_symplectic(machine.transform).matrix(), machine_input_state(machine.layout, config.psi).mean(),
                    config.seed, block, count);
}

EmpiricalMoments analytic_moments(const Machine &machine, Complex psi, std::uint64_t nominal_samples) {
  if (nominal_samples < 2) throw DomainError("analytic_moments: nominal_samples must be at least 2");
  const GaussianState out_state =
      apply_map(machine_input_state(machine.layout, psi), to_symplectic(machine.transform));
  EmpiricalMoments out;
  out.sample_count = nominal_samples;
  out.psi = psi;
  for (std::size_t mode = 0; mode < out_state.mode_count(); ++mode) {
    const auto k = static_cast<Eigen::Index>(2 * mode);
    out.modes.push_back(finish_mode(out_state.mean().segment<2>(k), out_state.covariance().block<2, 2>(k, k),
                                    nominal_samples));
  }
  return out;
}

double fidelity_standard_error(const ModeMoments &moments, std::uint64_t sample_count, Complex target) {
  const double n = static_cast<double>(sample_count);
  const double vxx = moments.covariance(0, 0);
  const double vpp = moments.covariance(1, 1);
  const double vxp = moments.covariance(0, 1);

  // Parameters: mean x, mean p, Vxx, Vpp, Vxp.
  std::array<double, 5> base{moments.mean(0), moments.mean(1), vxx, vpp, vxp};
  auto eval = [&](const std::array<double, 5> &q) {
    Eigen::Matrix2d cov;
    cov << q[2], q[4], q[4], q[3];
    return coherent_overlap(Eigen::Vector2d(q[0], q[1]), cov, target);
  };
  std::array<double, 5> grad{};
  for (std::size_t i = 0; i < 5; ++i) {
    const double h = 1e-6 * std::max(1.0, std::abs(base[i]));
    auto up = base;
    auto down = base;
    up[i] += h;
    down[i] -= h;
    grad[i] = (eval(up) - eval(down)) / (2.0 * h);
  }

  // Sampling covariance of the Gaussian moment estimators; means are
  // independent of the covariance estimate.
  Eigen::Matrix<double, 5, 5> sigma = Eigen::Matrix<double, 5, 5>::Zero();
  sigma(0, 0) = vxx / n;
  sigma(1, 1) = vpp / n;
  sigma(0, 1) = sigma(1, 0) = vxp / n;
  const double m = n - 1.0;
  sigma(2, 2) = 2.0 * vxx * vxx / m;
  sigma(3, 3) = 2.0 * vpp * vpp / m;
  sigma(4, 4) = (vxx * vpp + vxp * vxp) / m;
  sigma(2, 3) = sigma(3, 2) = 2.0 * vxp * vxp / m;
  sigma(2, 4) = sigma(4, 2) = 2.0 * vxx * vxp / m;
  sigma(3, 4) = sigma(4, 3) = 2.0 * vpp * vxp / m;

  Eigen::Matrix<double, 5, 1> g;
  for (int i = 0; i < 5; ++i) g(i) = grad[static_cast<std::size_t>(i)];
  return std::sqrt(std::max(0.0, g.dot(sigma * g)));
}

ComparisonSummary compare_to_analytic(const EmpiricalMoments &emp, const NoiseReport &report,
                                      const MachineLayout &layout, double threshold) {
  if (emp.modes.size() != layout.total_modes || layout.output_roles.size() != layout.total_modes) {
    throw DomainError("compare_to_analytic: " + std::to_string(emp.modes.size()) + " sampled modes for a " +
                      std::to_string(layout.total_modes) + "-mode layout");
  }
  if (!(emp.sample_count >= 2)) throw DomainError("compare_to_analytic: need at least two samples");
  if (!layout.anticlone_modes.empty() && !report.var_anticlone) {
    throw DomainError("compare_to_analytic: layout has anticlones but the report does not");
  }

  ComparisonSummary summary;
  summary.threshold = threshold;
  auto z = [](double value, double expected, double se) {
    if (se > 0.0) return (value - expected) / se;
    return value == expected ? 0.0 : std::copysign(INFINITY, value - expected);
  };

  for (std::size_t mode = 0; mode < layout.total_modes; ++mode) {
    const ModeMoments &mm = emp.modes[mode];
    ModeComparison c;
    c.mode = mode;
    c.role = layout.output_roles[mode];
    Complex target{0.0, 0.0};
    switch (c.role) {
      case OutputRole::kClone:
        target = emp.psi;
        c.expected_var = report.var_clone;
        c.expected_fidelity = report.f_clone;
        break;
      case OutputRole::kAnticlone:
        target = std::conj(emp.psi);
        c.expected_var = *report.var_anticlone;
        c.expected_fidelity = *report.f_anticlone;
        break;
      case OutputRole::kResidual:
        c.expected_var = 0.5;
        c.expected_fidelity = 1.0;
        break;
    }
    c.expected_mean = quadratures_of(target);
    c.empirical_fidelity = coherent_overlap(mm.mean, mm.covariance, target);
    c.se_fidelity = fidelity_standard_error(mm, emp.sample_count, target);
    for (int q = 0; q < 2; ++q) {
      c.z_mean(q) = z(mm.mean(q), c.expected_mean(q), mm.se_mean(q));
      c.z_var(q) = z(mm.covariance(q, q), c.expected_var, mm.se_var(q));
    }
    c.z_fidelity = z(c.empirical_fidelity, c.expected_fidelity, c.se_fidelity);
    const double worst = std::max({c.z_mean.cwiseAbs().maxCoeff(), c.z_var.cwiseAbs().maxCoeff(),
                                   std::abs(c.z_fidelity)});
    summary.max_abs_z = std::max(summary.max_abs_z, worst);
    summary.modes.push_back(c);
  }
  summary.flagged = !(summary.max_abs_z <= threshold);
  return summary;
}

}  // namespace pciclone
