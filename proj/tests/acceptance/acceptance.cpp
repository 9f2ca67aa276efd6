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


// Acceptance checks. One line per criterion: id, PASS/FAIL, wall time
// against its budget, and the measured figures. Pass criterion ids as
// arguments to run a subset. Exit status is nonzero if any check fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "pciclone/canonical.hpp"
#include "pciclone/cloner.hpp"
#include "pciclone/montecarlo.hpp"
#include "pciclone/optimizer.hpp"

using namespace pciclone;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string &what) {
    if (!ok) {
      pass = false;
      detail << " [violated: " << what << "]";
    }
  }
};

struct Criterion {
  std::string id;
  double budget_s;
  std::function<void(Outcome &)> body;
};

std::string config_label(int n, int nc, int m) {
  return "(" + std::to_string(n) + "," + std::to_string(nc) + "," + std::to_string(m) + ")";
}

// Balanced 1 + 1 -> 2.
void balanced_pair(Outcome &o) {
  const CloningConfig c(1, 1, 2);
  const Machine machine = build_machine(c);
  const NoiseReport report = noise_report(c);
  const Complex psi(1.0, 0.5);
  const double n = 1.0, m = 2.0;
  const double expected_var = 0.5 + (m - n) * (m - n) / (4.0 * m * m * n);
  o.require(std::abs(expected_var - 0.5625) < 1e-15, "oracle variance 0.5625");

  const GaussianState out = apply_map(machine_input_state(machine.layout, psi), to_symplectic(machine.transform));
  double worst_var = 0.0, worst_f = 0.0;
  for (std::size_t mode : machine.layout.clone_modes) {
    const auto [vx, vp] = quadrature_variance(out, mode);
    worst_var = std::max({worst_var, std::abs(vx - report.var_clone), std::abs(vp - report.var_clone),
                          std::abs(vx - expected_var), std::abs(vp - expected_var)});
    worst_f = std::max({worst_f, std::abs(fidelity_with_coherent(out, mode, psi) - 16.0 / 17.0),
                        std::abs(report.f_clone - 16.0 / 17.0)});
  }
  o.require(worst_var < 1e-10, "machine vs analytic variance < 1e-10");
  o.require(worst_f < 1e-12, "fidelity 16/17 within 1e-12");

  const EmpiricalMoments e = simulate(machine, {1000000, 20260101, psi});
  double worst_se = 0.0;
  for (std::size_t mode : machine.layout.clone_modes) {
    for (int q = 0; q < 2; ++q) {
      worst_se = std::max(worst_se, std::abs(e.modes[mode].covariance(q, q) - expected_var) / e.modes[mode].se_var(q));
    }
  }
  o.require(worst_se < 4.0, "Monte Carlo variance within 4 SE");
  o.detail << "var " << report.var_clone << " |machine-analytic| " << worst_var << " |f-16/17| " << worst_f
           << " MC max " << worst_se << " SE";
}

// f_clone(PCI) > f(standard 2N -> M) for N = N' <= 4, 2N + 1 <= M <= 20.
void beats_standard(Outcome &o) {
  std::vector<std::string> losses;
  int checked = 0;
  for (int n = 1; n <= 4; ++n) {
    for (int m = 2 * n + 1; m <= 20; ++m) {
      ++checked;
      const double f_pci = noise_report(CloningConfig(n, n, m)).f_clone;
      const double f_std = 2.0 * m * n / (2.0 * m * n + m - 2.0 * n);
      if (!(f_pci > f_std)) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "N=%d M=%d (%.9f <= %.9f)", n, m, f_pci, f_std);
        losses.emplace_back(buf);
      }
    }
  }
  o.detail << checked << " pairs, " << losses.size() << " where PCI does not win";
  for (const auto &l : losses) o.detail << "; " << l;
  o.require(losses.empty(), "strict inequality at every pair");
}

// Clone noise halves against the standard cloner as M grows.
void measurement_halving(Outcome &o) {
  const int m = 1000000;
  double worst_pci = 0.0, worst_std = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const double n_th = (gain_from_counts(CloningConfig(n, n, m)) - 1.0) / m;
    worst_pci = std::max(worst_pci, std::abs(n_th - 1.0 / (4.0 * n)));
    worst_std = std::max(worst_std, std::abs(standard_clone_noise(2 * n, m) - 1.0 / (2.0 * n)));
  }
  o.require(worst_pci < 1e-5, "n_th = 1/(4N) within 1e-5");
  o.require(worst_std < 1e-5, "standard = 1/(2N) within 1e-5");
  o.detail << "|n_th - 1/4N| " << worst_pci << " |std - 1/2N| " << worst_std;
}

// Unbalanced inputs tend to (sqrt N + sqrt N')^-2.
void unbalanced_limit(Outcome &o) {
  const int m = 100000000;
  double worst = 0.0;
  for (int n = 0; n <= 4; ++n) {
    for (int nc = 0; nc <= 4; ++nc) {
      if (n + nc == 0) continue;
      const double n_th = (gain_from_counts(CloningConfig(n, nc, m)) - 1.0) / m;
      const double limit = 1.0 / std::pow(std::sqrt(double(n)) + std::sqrt(double(nc)), 2);
      worst = std::max(worst, std::abs(n_th - limit));
    }
  }
  o.require(worst < 1e-5, "limit within 1e-5");
  o.detail << "M = 1e8, max deviation " << worst;
}

// Asymmetry curves at n = 8.
void asymmetry_curves(Outcome &o) {
  const double n = 8.0;
  double worst_a1 = 0.0;
  for (double m : {8.0, 9.0, 16.0, 32.0, 64.0, 256.0, 80000.0}) {
    worst_a1 = std::max(worst_a1, std::abs(asymmetry_noise(n, m, 1.0) - 0.125));
  }
  o.require(worst_a1 < 1e-12, "n_th(a=1) = 1/8");

  const AsymmetryResult identity = minimize_asymmetry(n, 8.0);
  o.require(identity.a_star == 0.0 && std::abs(identity.n_th) < 1e-15, "M=8 minimum 0 at a=0");

  o.detail << "a*:";
  for (double m : {9.0, 16.0, 32.0, 64.0}) {
    const double a = minimize_asymmetry(n, m).a_star;
    o.detail << " M=" << m << ":" << a;
    o.require(a > 0.0 && a < 0.5, "a* in (0, 1/2)");
  }
  double previous = 0.0;
  for (double m : {16.0, 64.0, 256.0, 80000.0}) {
    const double a = minimize_asymmetry(n, m).a_star;
    o.detail << " M=" << m << ":" << a;
    o.require(a > previous && a < 0.5, "a* increases toward 1/2");
    previous = a;
  }
  o.require(0.5 - previous < 1e-3, "a* close to 1/2 at M = 8e4");
}

// Numerical amplifier search against the closed form.
void amplifier_search(Outcome &o) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_gain = 0.0, worst_aux = 0.0, worst_residual = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const double alpha = 2.0 * u(rng);
    const double beta = 0.05 + 1.95 * u(rng);
    const double gamma = alpha + 3.0 * u(rng);
    const SearchResult r = solve_amplifier(alpha, beta, gamma, {});
    const double expected = oracle::gain_literal(alpha, beta, gamma);
    worst_gain = std::max(worst_gain, std::abs(r.gain - expected) / expected);
    worst_aux = std::max({worst_aux, std::abs(r.m13), std::abs(r.l13), std::abs(r.l11), std::abs(r.m12)});
    worst_residual = std::max(worst_residual, r.full_residual);
  }
  o.require(worst_gain < 1e-6, "relative gain error < 1e-6");
  o.require(worst_aux < 1e-6, "auxiliary couplings < 1e-6");
  o.require(worst_residual < 1e-8, "full residual < 1e-8");
  o.detail << "rel gain " << worst_gain << " aux " << worst_aux << " residual " << worst_residual;
}

// Structural invariants over N + N' <= 6, M <= 8.
void structural(Outcome &o) {
  const std::vector<Complex> psis{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {0.6, -1.3}, {-2.5, 0.4}};
  double commutation = 0.0, symplectic = 0.0, mean = 0.0, spread = 0.0, anticlone_var = 0.0;
  int configs = 0;
  for (int n = 0; n <= 6; ++n) {
    for (int nc = 0; n + nc <= 6; ++nc) {
      if (n + nc == 0) continue;
      for (int m = std::max(n, 1); m <= 8; ++m) {
        ++configs;
        const CloningConfig c(n, nc, m);
        const Machine machine = build_machine(c);
        const StructuralCheck s = check_machine(machine, psis);
        commutation = std::max(commutation, s.commutation_residual);
        symplectic = std::max(symplectic, s.symplectic_residual);
        mean = std::max(mean, s.mean_error);
        spread = std::max(spread, s.clone_spread);
        const int mc = c.m_anticlones();
        if (mc == 0) continue;
        const double g = n == nc ? oracle::gain_balanced(n, m) : oracle::gain_counts_literal(n, nc, m);
        const double expected = 0.5 + (g - 1.0) / mc;
        const GaussianState out =
            apply_map(machine_input_state(machine.layout, psis[3]), to_symplectic(machine.transform));
        for (std::size_t mode : machine.layout.anticlone_modes) {
          const auto [vx, vp] = quadrature_variance(out, mode);
          anticlone_var = std::max({anticlone_var, std::abs(vx - expected), std::abs(vp - expected)});
        }
      }
    }
  }
  o.require(commutation < 1e-10, "commutation residual < 1e-10");
  o.require(symplectic < 1e-10, "symplectic residual < 1e-10");
  o.require(mean < 1e-12, "mean exactness < 1e-12");
  o.require(spread < 1e-12, "clones identical < 1e-12");
  o.require(anticlone_var < 1e-10, "anticlone variance < 1e-10");
  o.detail << configs << " configs: commutation " << commutation << " symplectic " << symplectic << " mean "
           << mean << " spread " << spread << " anticlone var " << anticlone_var;
}

// Label-interchange duality and optimality of the balanced split.
void duality_balance(Outcome &o) {
  double worst_dual = 0.0;
  int pairs = 0;
  for (int n = 0; n <= 6; ++n) {
    for (int nc = 0; n + nc <= 6; ++nc) {
      if (n + nc == 0) continue;
      for (int m = std::max(n, 1); m <= 8; ++m) {
        const int mc = m + nc - n;
        if (mc < 1) continue;  // no dual machine without anticlones
        ++pairs;
        worst_dual = std::max(worst_dual, std::abs(gain_from_counts(CloningConfig(n, nc, m)) -
                                                   gain_from_counts(CloningConfig(nc, n, mc))));
      }
    }
  }
  o.require(worst_dual < 1e-12, "duality within 1e-12");

  // Pooled noise over clones and anticlones at fixed N + N' and M + M'.
  int splits = 0;
  std::vector<std::string> beaten;
  for (int total_in = 2; total_in <= 8; total_in += 2) {
    for (int total_out = total_in; total_out <= 16; total_out += 2) {
      const int half = total_in / 2;
      const double balanced = noise_report(CloningConfig(half, half, total_out / 2)).n_th_mean;
      for (int n = 0; n <= total_in; ++n) {
        const int nc = total_in - n;
        const int m = (total_out + n - nc) / 2;
        if (m < std::max(n, 1)) continue;
        ++splits;
        if (noise_report(CloningConfig(n, nc, m)).n_th_mean < balanced - 1e-15) {
          beaten.push_back(config_label(n, nc, m));
        }
      }
    }
  }
  for (const auto &b : beaten) o.detail << " beaten by " << b;
  o.require(beaten.empty(), "balanced split minimal");
  o.detail << pairs << " dual pairs max " << worst_dual << ", " << splits << " splits";
}

}  // namespace

int main(int argc, char **argv) {
  const std::vector<Criterion> criteria{
      {"balanced_pair", 5.0, balanced_pair},
      {"beats_standard", 1.0, beats_standard},
      {"measurement_halving", 1.0, measurement_halving},
      {"unbalanced_limit", 1.0, unbalanced_limit},
      {"asymmetry_curves", 10.0, asymmetry_curves},
      {"amplifier_search", 60.0, amplifier_search},
      {"structural", 10.0, structural},
      {"duality_balance", 10.0, duality_balance},
  };
  std::vector<std::string> wanted(argv + 1, argv + argc);
  int failures = 0;
  for (const auto &c : criteria) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception &e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (elapsed > c.budget_s) {
      o.pass = false;
      o.detail << " [over time budget]";
    }
    if (!o.pass) ++failures;
    std::printf("%-20s %s %.3fs/%.0fs %s\n", c.id.c_str(), o.pass ? "PASS" : "FAIL", elapsed, c.budget_s,
                o.detail.str().c_str());
  }
  return failures == 0 ? 0 : 1;
}
