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

#include "pciclone/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "pciclone/cloner.hpp"

namespace pciclone {

namespace {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

// 0.5 x^T H x + g^T x + k
struct Quadratic {
  Mat4 hessian = Mat4::Zero();
  Vec4 linear = Vec4::Zero();
  double constant = 0.0;

  double value(const Vec4 &x) const { return 0.5 * x.dot(hessian * x) + linear.dot(x) + constant; }
  Vec4 gradient(const Vec4 &x) const { return hessian * x + linear; }
};

// Decision variables and their mapping back to row-1 coefficients. With
// beta > 0 amplitudes are rescaled to beta = 1 and x = (M11, L11, M13, L13);
// with beta = 0 the mean conditions pin M11 = gamma/alpha, L11 = 0 and
// x = (M12, L12, M13, L13).
struct Reduced {
  Quadratic objective;   // (Delta b1)^2
  Quadratic constraint;  // sum M1j^2 - L1j^2 - 1
  bool beta_free = true;
  double alpha = 0.0;  // rescaled
  double gamma = 0.0;  // rescaled
  double scale = 1.0;
};

Reduced make_reduced(const AmplifierSearchProblem &p) {
  Reduced r;
  if (p.beta > 0.0) {
    const double a = p.alpha / p.beta;
    const double g = p.gamma / p.beta;
    r.alpha = a;
    r.gamma = g;
    // 2 f = M11^2 + a^2 L11^2 + M13^2 + L11^2 + (g - a M11)^2 + L13^2
    r.objective.hessian.diagonal() << 1.0 + a * a, 1.0 + a * a, 1.0, 1.0;
    r.objective.linear << -a * g, 0.0, 0.0, 0.0;
    r.objective.constant = 0.5 * g * g;
    // c = M11^2 + a^2 L11^2 + M13^2 - L11^2 - (g - a M11)^2 - L13^2 - 1
    r.constraint.hessian.diagonal() << 2.0 * (1.0 - a * a), 2.0 * (a * a - 1.0), 2.0, -2.0;
    r.constraint.linear << 2.0 * a * g, 0.0, 0.0, 0.0;
    r.constraint.constant = -g * g - 1.0;
    r.scale = 1.0 + a * a + g * g;
  } else {
    r.beta_free = false;
    const double m11 = p.gamma / p.alpha;
    r.alpha = p.alpha;
    r.gamma = p.gamma;
    r.objective.hessian.diagonal() << 1.0, 1.0, 1.0, 1.0;
    r.objective.constant = 0.5 * m11 * m11;
    r.constraint.hessian.diagonal() << 2.0, -2.0, 2.0, -2.0;
    r.constraint.constant = m11 * m11 - 1.0;
    r.scale = 1.0 + m11 * m11;
  }
  return r;
}

struct RowCoefficients {
  double m11, m12, m13, l11, l12, l13;
};

RowCoefficients row_from(const Reduced &r, const Vec4 &x) {
  if (r.beta_free) {
    return {x(0), -r.alpha * x(1), x(2), x(1), r.gamma - r.alpha * x(0), x(3)};
  }
  return {r.gamma / r.alpha, x(0), x(2), 0.0, x(1), x(3)};
}

struct LocalSolve {
  Vec4 x;
  double multiplier = 0.0;
  double objective = 0.0;
  double constraint = 0.0;
  double stationarity = 0.0;
  int iterations = 0;
  bool converged = false;
};

Vec4 newton_step(const Mat4 &hess, const Vec4 &grad, double relative_floor) {
  Eigen::SelfAdjointEigenSolver<Mat4> eig(hess);
  Vec4 ev = eig.eigenvalues();
  const double floor = relative_floor * std::max(1.0, ev.cwiseAbs().maxCoeff());
  for (int i = 0; i < 4; ++i) ev(i) = std::max(std::abs(ev(i)), floor);
  return -eig.eigenvectors() * (eig.eigenvectors().transpose() * grad).cwiseQuotient(ev);
}

// Quadratic-penalty continuation with first-order multiplier updates. Each
// subproblem is minimized by a damped Newton method with an eigenvalue-
// clamped Hessian. Subproblem tolerance tightens from 1e-4 to `tol`.
LocalSolve augmented_lagrangian(const Reduced &r, Vec4 x, const SearchOptions &opt) {
  const double tol = opt.tol * r.scale;
  double lambda = 0.0;
  double rho = 1.0;
  double previous_violation = std::numeric_limits<double>::infinity();
  LocalSolve out;

  auto merit = [&](const Vec4 &y) {
    const double c = r.constraint.value(y);
    return r.objective.value(y) + lambda * c + 0.5 * rho * c * c;
  };
  auto derivatives = [&](const Vec4 &y, Vec4 &grad, Mat4 &hess) {
    const double c = r.constraint.value(y);
    const Vec4 grad_c = r.constraint.gradient(y);
    const double weight = lambda + rho * c;
    grad = r.objective.gradient(y) + weight * grad_c;
    hess = r.objective.hessian + weight * r.constraint.hessian + rho * grad_c * grad_c.transpose();
  };

  for (int outer = 0; outer < opt.max_outer_iterations; ++outer) {
    const double inner_tol = std::max(tol, 1e-4 * r.scale * std::pow(0.1, outer));
    for (int inner = 0; inner < opt.max_inner_iterations; ++inner) {
      ++out.iterations;
      Vec4 grad;
      Mat4 hess;
      derivatives(x, grad, hess);
      if (grad.cwiseAbs().maxCoeff() <= inner_tol) break;
      const Vec4 step = newton_step(hess, grad, 1e-10);

      const double phi = merit(x);
      const double slope = grad.dot(step);
      double t = 1.0;
      double phi_next = phi;
      bool accepted = false;
      for (int ls = 0; ls < 60; ++ls, t *= 0.5) {
        phi_next = merit(x + t * step);
        if (phi_next <= phi + 1e-4 * t * slope) {
          accepted = true;
          break;
        }
      }
      if (accepted && phi_next < phi) {
        x += t * step;
        continue;
      }
      // The merit no longer resolves progress; accept a full step if it
      // shrinks the gradient.
      Vec4 grad_next;
      Mat4 hess_next;
      derivatives(x + step, grad_next, hess_next);
      if (!(grad_next.cwiseAbs().maxCoeff() < 0.5 * grad.cwiseAbs().maxCoeff())) break;
      x += step;
    }

    const double c = r.constraint.value(x);
    lambda += rho * c;
    const Vec4 lagrangian_grad = r.objective.gradient(x) + lambda * r.constraint.gradient(x);
    out.stationarity = lagrangian_grad.cwiseAbs().maxCoeff();
    out.constraint = c;
    if (std::abs(c) <= tol && out.stationarity <= 10.0 * tol && inner_tol <= tol) {
      out.converged = true;
      break;
    }
    if (std::abs(c) > tol && std::abs(c) > 0.25 * previous_violation) rho = std::min(rho * 10.0, 1e8);
    previous_violation = std::abs(c);
  }

  // Polish with undamped Newton steps. Where the multiplier makes an
  // auxiliary direction flat to second order (G = 1), the merit function
  // is quartic there and its decrease drowns in rounding, but the gradient
  // along that direction stays exact and Newton keeps contracting it.
  if (out.converged) {
    for (int k = 0; k < 120; ++k) {
      Vec4 grad;
      Mat4 hess;
      derivatives(x, grad, hess);
      const Vec4 step = newton_step(hess, grad, 1e-15);
      if (!(step.cwiseAbs().maxCoeff() > 0.0)) break;
      const Vec4 trial = x + step;
      if (merit(trial) > merit(x) + 1e-13 * r.scale) break;
      x = trial;
    }
    const double c = r.constraint.value(x);
    out.constraint = c;
    out.stationarity = (r.objective.gradient(x) + lambda * r.constraint.gradient(x)).cwiseAbs().maxCoeff();
    out.converged = std::abs(c) <= tol && out.stationarity <= 10.0 * tol;
  }
  out.x = x;
  out.multiplier = lambda;
  out.objective = r.objective.value(x);
  return out;
}

void symplectic_orthogonalize(Eigen::VectorXd &w, const std::vector<Eigen::VectorXd> &xs,
                              const std::vector<Eigen::VectorXd> &ps, const Eigen::MatrixXd &omega) {
  // Two sweeps for numerical stability.
  for (int sweep = 0; sweep < 2; ++sweep) {
    for (std::size_t k = 0; k < xs.size(); ++k) {
      const double against_p = w.dot(omega * ps[k]);
      const double against_x = w.dot(omega * xs[k]);
      w -= against_p * xs[k];
      w += against_x * ps[k];
    }
  }
}

}  // namespace

Eigen::MatrixXd complete_symplectic(const Eigen::VectorXd &x_row, const Eigen::VectorXd &p_row) {
  const Eigen::Index dim = x_row.size();
  if (dim == 0 || dim % 2 != 0 || p_row.size() != dim) {
    throw DomainError("complete_symplectic: rows must share a positive even length");
  }
  const auto modes = static_cast<std::size_t>(dim / 2);
  const Eigen::MatrixXd omega = symplectic_form(modes);
  if (!(std::abs(x_row.dot(omega * p_row)) > 1e-8)) {
    throw DomainError("complete_symplectic: row pair is symplectically degenerate");
  }

  std::vector<Eigen::VectorXd> xs{x_row};
  std::vector<Eigen::VectorXd> ps{p_row};
  std::vector<Eigen::VectorXd> candidates;
  for (Eigen::Index i = 0; i < dim; ++i) candidates.push_back(Eigen::VectorXd::Unit(dim, i));

  while (xs.size() < modes) {
    for (auto &c : candidates) symplectic_orthogonalize(c, xs, ps, omega);
    std::size_t best_u = 0;
    for (std::size_t i = 1; i < candidates.size(); ++i) {
      if (candidates[i].norm() > candidates[best_u].norm()) best_u = i;
    }
    Eigen::VectorXd u = candidates[best_u].normalized();
    candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(best_u));

    std::size_t best_v = 0;
    double best_pairing = 0.0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const double pairing = std::abs(u.dot(omega * candidates[i]));
      if (pairing > best_pairing) {
        best_pairing = pairing;
        best_v = i;
      }
    }
    if (!(best_pairing > 1e-12)) throw DomainError("complete_symplectic: no partner found");
    Eigen::VectorXd v = candidates[best_v] / u.dot(omega * candidates[best_v]);
    candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(best_v));
    xs.push_back(std::move(u));
    ps.push_back(std::move(v));
  }

  Eigen::MatrixXd s(dim, dim);
  for (std::size_t k = 0; k < modes; ++k) {
    s.row(static_cast<Eigen::Index>(2 * k)) = xs[k].transpose();
    s.row(static_cast<Eigen::Index>(2 * k + 1)) = ps[k].transpose();
  }
  return s;
}

SearchResult solve_amplifier(double alpha, double beta, double gamma, const SearchOptions &options) {
  if (!(alpha >= 0.0) || !(beta >= 0.0) || !(gamma >= 0.0) || !std::isfinite(alpha + beta + gamma)) {
    throw DomainError("solve_amplifier: amplitudes must be finite and non-negative");
  }
  if (gamma < alpha) throw DomainError("solve_amplifier: gamma < alpha is the attenuation regime");
  if (alpha == 0.0 && beta == 0.0) throw DomainError("solve_amplifier: alpha and beta cannot both vanish");
  if (options.restarts < 1) throw DomainError("solve_amplifier: need at least one start");

  const AmplifierSearchProblem problem{alpha, beta, gamma};
  const Reduced reduced = make_reduced(problem);

  std::mt19937_64 rng(options.seed);
  const double spread = 1.0 + reduced.gamma;
  std::uniform_real_distribution<double> uniform(-spread, spread);

  std::vector<LocalSolve> runs;
  runs.reserve(static_cast<std::size_t>(options.restarts));
  for (int s = 0; s < options.restarts; ++s) {
    Vec4 start;
    for (int i = 0; i < 4; ++i) start(i) = uniform(rng);
    runs.push_back(augmented_lagrangian(reduced, start, options));
  }

  const double same_objective = 1e-9 * reduced.scale;
  int best = -1;
  int converged = 0;
  int total_iterations = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    total_iterations += runs[i].iterations;
    if (!runs[i].converged) continue;
    ++converged;
    if (best < 0 || runs[i].objective < runs[static_cast<std::size_t>(best)].objective - same_objective) {
      best = static_cast<int>(i);
    }
  }
  if (best < 0) {
    throw ConvergenceError("solve_amplifier: no start converged after " + std::to_string(options.restarts) +
                           " restarts");
  }
  const LocalSolve &winner = runs[static_cast<std::size_t>(best)];

  SearchResult out;
  out.problem = problem;
  out.iterations = total_iterations;
  out.converged_starts = converged;
  for (const auto &run : runs) {
    if (run.converged && std::abs(run.objective - winner.objective) <= same_objective) {
      out.start_spread = std::max(out.start_spread, (run.x - winner.x).cwiseAbs().maxCoeff());
    }
  }

  // Sign of L11, M13, L13 (and of M12, L12 when beta = 0) is a gauge choice
  // that leaves the problem invariant; report the non-negative
  // representative.
  const RowCoefficients row = row_from(reduced, winner.x);
  out.m11 = row.m11;
  out.m12 = row.m12;
  out.m13 = std::abs(row.m13);
  out.l11 = row.l11;
  out.l12 = row.l12;
  out.l13 = std::abs(row.l13);
  if (reduced.beta_free && out.l11 < 0.0) {
    out.l11 = -out.l11;
    out.m12 = -out.m12;
  }
  if (!reduced.beta_free) {
    out.m12 = std::abs(out.m12);
    out.l12 = std::abs(out.l12);
  }
  out.multiplier = winner.multiplier;

  // A vacuum input column is interchangeable with the auxiliary vacuum:
  // with alpha = 0 (a1 carries no signal) or beta = 0 (a2 carries none) a
  // beam splitter between that input and a3 leaves every constraint and the
  // noise unchanged. Fix the gauge by rotating the auxiliary weight into
  // the input column.
  auto fold = [](double &m_in, double &l_in, double &m_aux, double &l_aux) {
    const double radius = std::hypot(m_in, m_aux);
    if (radius > 0.0) {
      const double cs = m_in / radius;
      const double sn = m_aux / radius;
      const double l_rot = cs * l_in + sn * l_aux;
      l_aux = -sn * l_in + cs * l_aux;
      l_in = l_rot;
      m_in = radius;
      m_aux = 0.0;
    }
  };
  if (alpha == 0.0) fold(out.m11, out.l11, out.m13, out.l13);
  if (beta == 0.0) fold(out.l12, out.m12, out.l13, out.m13);

  const double sum_m = out.m11 * out.m11 + out.m12 * out.m12 + out.m13 * out.m13;
  const double sum_l = out.l11 * out.l11 + out.l12 * out.l12 + out.l13 * out.l13;
  out.objective = 0.5 * (sum_m + sum_l);
  out.reduced_residual = std::abs(sum_m - sum_l - 1.0);
  out.mean_residual = std::abs(alpha * out.m11 + beta * out.l12 - gamma) + std::abs(beta * out.m12 + alpha * out.l11);
  out.gain = out.m11 * out.m11;

  Eigen::VectorXd x_row = Eigen::VectorXd::Zero(6);
  Eigen::VectorXd p_row = Eigen::VectorXd::Zero(6);
  const double ms[] = {out.m11, out.m12, out.m13};
  const double ls[] = {out.l11, out.l12, out.l13};
  for (int j = 0; j < 3; ++j) {
    x_row(2 * j) = ms[j] + ls[j];
    p_row(2 * j + 1) = ms[j] - ls[j];
  }
  out.full_residual = commutation_residual(from_symplectic(complete_symplectic(x_row, p_row)));
  out.converged = true;
  return out;
}

AsymmetryResult minimize_asymmetry(double n, double m_clones, const AsymmetryOptions &options) {
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("minimize_asymmetry: n must be positive");
  if (!(m_clones >= 1.0) || !std::isfinite(m_clones)) throw DomainError("minimize_asymmetry: M must be >= 1");
  if (!(options.grid_step > 0.0 && options.grid_step < 1.0)) {
    throw DomainError("minimize_asymmetry: grid step must lie in (0, 1)");
  }
  const double a_min = std::max(0.0, 1.0 - m_clones / n);
  if (!(a_min < 1.0)) throw DomainError("minimize_asymmetry: feasible region a in [1 - M/n, 1) is empty");

  auto noise = [&](double a) { return asymmetry_noise(n, m_clones, a); };

  AsymmetryResult result{n, m_clones, 0.0, 0.0, 0.0, {}};
  std::vector<double> grid{a_min};
  const auto steps = static_cast<long>(std::ceil(1.0 / options.grid_step));
  for (long k = 0; k < steps; ++k) {
    const double a = static_cast<double>(k) * options.grid_step;
    if (a > a_min && a < 1.0) grid.push_back(a);
  }
  std::size_t best = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double a = grid[i];
    const double g = asymmetry_gain(n, m_clones, a);
    result.trace.push_back({a, g, (g - 1.0) / m_clones});
    // Strict improvement only, so ties keep the smaller a.
    if (result.trace[i].n_th < result.trace[best].n_th) best = i;
  }

  // Golden-section search on the bracket around the best grid point.
  double lo = grid[best > 0 ? best - 1 : 0];
  double hi = grid[std::min(best + 1, grid.size() - 1)];
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = noise(x1);
  double f2 = noise(x2);
  while (hi - lo > options.refine_tol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = noise(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = noise(x2);
    }
  }
  const double refined = 0.5 * (lo + hi);
  const double refined_noise = noise(refined);

  if (refined_noise < result.trace[best].n_th) {
    result.a_star = refined;
  } else {
    result.a_star = result.trace[best].a;
  }
  result.gain = asymmetry_gain(n, m_clones, result.a_star);
  result.n_th = (result.gain - 1.0) / m_clones;
  return result;
}

std::size_t count_local_minima(const std::vector<AsymmetryPoint> &trace) {
  std::size_t count = 0;
  for (std::size_t i = 1; i + 1 < trace.size(); ++i) {
    if (trace[i].n_th < trace[i - 1].n_th && trace[i].n_th < trace[i + 1].n_th) ++count;
  }
  return count;
}

}  // namespace pciclone
