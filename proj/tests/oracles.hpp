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

// Reference formulas for tests, kept in their unrationalized quotient forms
// (removable singularities included) so they stay independent of the
// expressions the library evaluates.

#ifndef PCICLONE_TESTS_ORACLES_HPP
#define PCICLONE_TESTS_ORACLES_HPP

#include <cmath>
#include <functional>
#include <numbers>

namespace pciclone::oracle {

// sqrt(G) = (-alpha gamma + beta sqrt(gamma^2 - alpha^2 + beta^2)) / (beta^2 - alpha^2)
inline double gain_literal(double alpha, double beta, double gamma) {
  const double s = (-alpha * gamma + beta * std::sqrt(gamma * gamma - alpha * alpha + beta * beta)) /
                   (beta * beta - alpha * alpha);
  return s * s;
}

// sqrt(G) = (sqrt(N'M') - sqrt(NM)) / (N' - N)
inline double gain_counts_literal(double n, double nc, double m) {
  const double mc = m + nc - n;
  const double s = (std::sqrt(nc * mc) - std::sqrt(n * m)) / (nc - n);
  return s * s;
}

// Balanced limit (M + N)^2 / (4 M N).
inline double gain_balanced(double n, double m) { return (m + n) * (m + n) / (4.0 * m * n); }

// sqrt(G) = (sqrt(a) sqrt(M/n + 2a - 1) - sqrt(M/n) sqrt(1 - a)) / (2a - 1)
inline double asymmetry_gain_literal(double n, double m, double a) {
  const double r = m / n;
  const double s = (std::sqrt(a) * std::sqrt(r + 2.0 * a - 1.0) - std::sqrt(r) * std::sqrt(1.0 - a)) / (2.0 * a - 1.0);
  return s * s;
}

// Composite Simpson rule on [lo, hi] with an even number of panels.
inline double simpson(const std::function<double(double)> &f, double lo, double hi, int panels) {
  if (panels % 2 != 0) ++panels;
  const double h = (hi - lo) / panels;
  double sum = f(lo) + f(hi);
  for (int i = 1; i < panels; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * f(lo + i * h);
  return sum * h / 3.0;
}

// Overlap of a clone with the target coherent state from its P-function:
//   F = int P(xi) |<psi|xi>|^2 d^2 xi = int P(xi) exp(-|xi - psi|^2) d^2 xi,
// integrated radially around psi out to `radius`.
inline double fidelity_from_p_function(double n_th, double radius, int panels = 20000) {
  return simpson(
      [n_th](double r) {
        const double p = std::exp(-r * r / n_th) / (std::numbers::pi * n_th);
        return 2.0 * std::numbers::pi * r * p * std::exp(-r * r);
      },
      0.0, radius, panels);
}

}  // namespace pciclone::oracle

#endif  // PCICLONE_TESTS_ORACLES_HPP
