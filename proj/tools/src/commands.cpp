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


#include "pciclone_cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif
#include <nlohmann/json.hpp>

#include "pciclone/cloner.hpp"
#include "pciclone/errors.hpp"
#include "pciclone/montecarlo.hpp"
#include "pciclone/optimizer.hpp"
#include "pciclone/serialize.hpp"

namespace pciclone::cli {

namespace {

using nlohmann::json;

struct Globals {
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  std::string format;
};

// --tol, then PCICLONE_TOL, then the command's own default.
double resolve_tol(const Globals &g, double fallback) {
  if (g.tol) {
    if (!(*g.tol > 0.0)) throw DomainError("--tol must be positive");
    return *g.tol;
  }
  if (const char *env = std::getenv("PCICLONE_TOL"); env != nullptr && *env != '\0') {
    char *end = nullptr;
    const double value = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(value > 0.0)) {
      throw DomainError(std::string("PCICLONE_TOL is not a positive number: ") + env);
    }
    return value;
  }
  return fallback;
}

std::string csv_cell(std::optional<double> v) { return v ? format_number(*v) : std::string(); }

std::string report_csv(const NoiseReport &r) {
  std::ostringstream os;
  os << "N,Nc,M,Mc,gain,n_th_clone,n_th_anticlone,var_clone,var_anticlone,f_clone,f_anticlone,n_th_mean,"
        "baseline_var,baseline_f,baseline_f_anticlone,measurement_limit_noise\n";
  os << r.config.n_inputs() << ',' << r.config.n_conj() << ',' << r.config.m_clones() << ','
     << r.config.m_anticlones() << ',' << format_number(r.gain) << ',' << format_number(r.n_th_clone) << ','
     << csv_cell(r.n_th_anticlone) << ',' << format_number(r.var_clone) << ',' << csv_cell(r.var_anticlone) << ','
     << format_number(r.f_clone) << ',' << csv_cell(r.f_anticlone) << ',' << format_number(r.n_th_mean) << ','
     << format_number(r.baseline_var) << ',' << format_number(r.baseline_f) << ','
     << format_number(r.baseline_f_anticlone) << ',' << format_number(r.measurement_limit_noise) << '\n';
  return os.str();
}

json sweep_json(const std::vector<SweepRow> &rows) {
  json arr = json::array();
  for (const auto &r : rows) {
    arr.push_back({{"n", r.n},
                   {"M", r.M},
                   {"a", r.a},
                   {"N", r.N},
                   {"Nc", r.Nc},
                   {"G", r.G},
                   {"n_th_clone", r.n_th_clone},
                   {"sqrt_n_th", r.sqrt_n_th},
                   {"integral", std::abs(r.Nc - std::round(r.Nc)) < 1e-9 && std::abs(r.N - std::round(r.N)) < 1e-9}});
  }
  return arr;
}

// N' = a n and N = n - N' must come out integral.
CloningConfig config_from_asymmetry(double n, double a, int m) {
  const double nc = a * n;
  const double rounded_nc = std::round(nc);
  const double rounded_n = std::round(n);
  if (std::abs(nc - rounded_nc) > 1e-9 || std::abs(n - rounded_n) > 1e-9) {
    throw DomainError("n and a * n must be integers for a concrete machine");
  }
  return CloningConfig(static_cast<int>(rounded_n - rounded_nc), static_cast<int>(rounded_nc), m);
}

std::string z_table(const ComparisonSummary &s, const EmpiricalMoments &e) {
  std::ostringstream os;
  os << "mode role       mean_x       mean_p       var_x        var_p        z_mx    z_mp    z_vx    z_vp    z_f\n";
  char line[256];
  for (const auto &m : s.modes) {
    const ModeMoments &mm = e.modes[m.mode];
    std::snprintf(line, sizeof line, "%-4zu %-9s %12.6f %12.6f %12.6f %12.6f %7.3f %7.3f %7.3f %7.3f %7.3f\n", m.mode,
                  std::string(to_string(m.role)).c_str(), mm.mean(0), mm.mean(1), mm.covariance(0, 0),
                  mm.covariance(1, 1), m.z_mean(0), m.z_mean(1), m.z_var(0), m.z_var(1), m.z_fidelity);
    os << line;
  }
  return os.str();
}

std::string z_csv(const ComparisonSummary &s, const EmpiricalMoments &e) {
  std::ostringstream os;
  os << "mode,role,mean_x,mean_p,var_x,var_p,expected_var,empirical_fidelity,expected_fidelity,z_mean_x,z_mean_p,"
        "z_var_x,z_var_p,z_fidelity\n";
  for (const auto &m : s.modes) {
    const ModeMoments &mm = e.modes[m.mode];
    os << m.mode << ',' << to_string(m.role) << ',' << format_number(mm.mean(0)) << ',' << format_number(mm.mean(1))
       << ',' << format_number(mm.covariance(0, 0)) << ',' << format_number(mm.covariance(1, 1)) << ','
       << format_number(m.expected_var) << ',' << format_number(m.empirical_fidelity) << ','
       << format_number(m.expected_fidelity) << ',' << format_number(m.z_mean(0)) << ','
       << format_number(m.z_mean(1)) << ',' << format_number(m.z_var(0)) << ',' << format_number(m.z_var(1)) << ','
       << format_number(m.z_fidelity) << '\n';
  }
  return os.str();
}

}  // namespace

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::vector<SweepRow> sweep_rows(double n, std::vector<double> m_values, std::vector<double> a_values) {
  if (!(n >= 1.0) || !std::isfinite(n)) throw DomainError("sweep: n must be >= 1");
  if (m_values.empty()) throw DomainError("sweep: the M list is empty");
  if (a_values.empty()) throw DomainError("sweep: no asymmetry values");
  for (double m : m_values) {
    if (!(m > 0.0) || !std::isfinite(m)) throw DomainError("sweep: every M must be positive");
  }
  for (double a : a_values) {
    if (!(a >= 0.0 && a <= 1.0)) throw DomainError("sweep: a must lie in [0, 1]");
  }
  std::sort(m_values.begin(), m_values.end());
  m_values.erase(std::unique(m_values.begin(), m_values.end()), m_values.end());
  std::sort(a_values.begin(), a_values.end());
  a_values.erase(std::unique(a_values.begin(), a_values.end()), a_values.end());

  std::vector<SweepRow> rows;
  for (double m : m_values) {
    for (double a : a_values) {
      if (m / n < (1.0 - a) - 1e-12) continue;
      const double g = asymmetry_gain(n, m, a);
      const double n_th = (g - 1.0) / m;
      rows.push_back({n, m, a, (1.0 - a) * n, a * n, g, n_th, std::sqrt(n_th)});
    }
  }
  return rows;
}

std::string to_csv(const std::vector<SweepRow> &rows) {
  std::string s = std::string(kSweepHeader) + "\n";
  for (const auto &r : rows) {
    s += format_number(r.n) + ',' + format_number(r.M) + ',' + format_number(r.a) + ',' + format_number(r.N) + ',' +
         format_number(r.Nc) + ',' + format_number(r.G) + ',' + format_number(r.n_th_clone) + ',' +
         format_number(r.sqrt_n_th) + '\n';
  }
  return s;
}

std::vector<SweepRow> parse_sweep_csv(const std::string &text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kSweepHeader) throw DomainError("sweep CSV: unexpected header");
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double v[8];
    std::size_t pos = 0;
    for (int i = 0; i < 8; ++i) {
      const std::size_t next = line.find(',', pos);
      if ((i < 7) == (next == std::string::npos)) throw DomainError("sweep CSV: expected 8 fields");
      const std::string cell = line.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
      char *end = nullptr;
      v[i] = std::strtod(cell.c_str(), &end);
      if (cell.empty() || *end != '\0') throw DomainError("sweep CSV: bad number '" + cell + "'");
      pos = next + 1;
    }
    rows.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]});
  }
  return rows;
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Cloning machines with phase-conjugated inputs"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--tol", g.tol, "Tolerance (overrides PCICLONE_TOL)");
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--out", g.out_path, "Write the document to this file");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  // report
  auto *report = app.add_subcommand("report", "Closed-form noise report for N copies of psi, Nc of conj(psi), M clones");
  std::optional<int> report_n_inputs, report_n_conj, report_m_clones;
  std::optional<double> report_n, report_a;
  std::optional<int> report_m;
  report->add_option("N", report_n_inputs, "Copies of psi");
  report->add_option("Nc", report_n_conj, "Copies of conj(psi)");
  report->add_option("M", report_m_clones, "Clones");
  report->add_option("--n", report_n, "Total inputs n (with --a and --m)");
  report->add_option("--a", report_a, "Conjugate fraction a = Nc / n");
  report->add_option("--m", report_m, "Clones (with --n and --a)");

  // sweep
  auto *sweep = app.add_subcommand("sweep", "Noise against asymmetry a for n inputs and each M");
  double sweep_n = 0.0;
  std::vector<double> sweep_m;
  int a_steps = 100;
  std::vector<double> sweep_a;
  sweep->add_option("n", sweep_n, "Total inputs")->required();
  sweep->add_option("M", sweep_m, "Clone counts");
  sweep->add_option("--a-steps", a_steps, "Grid a = i / a_steps, i = 0..a_steps");
  sweep->add_option("--a", sweep_a, "Explicit a values (replace the grid)");

  // optimize
  auto *optimize = app.add_subcommand("optimize", "Asymmetry a minimizing the clone noise");
  double opt_n = 0.0, opt_m = 0.0;
  AsymmetryOptions asym;
  bool with_trace = false;
  optimize->add_option("n", opt_n, "Total inputs")->required();
  optimize->add_option("M", opt_m, "Clones")->required();
  optimize->add_option("--grid-step", asym.grid_step, "Grid spacing in a");
  optimize->add_flag("--trace", with_trace, "Include the grid trace");

  // solve
  auto *solve = app.add_subcommand("solve", "Numerical amplifier search for amplitudes (alpha, beta, gamma)");
  double alpha = 0.0, beta = 0.0, gamma = 0.0;
  SearchOptions search;
  solve->add_option("alpha", alpha)->required();
  solve->add_option("beta", beta)->required();
  solve->add_option("gamma", gamma)->required();
  solve->add_option("--restarts", search.restarts, "Multi-start count");

  // verify
  auto *verify = app.add_subcommand("verify", "Sample the machine and compare with the closed form");
  int verify_n = 0, verify_nc = 0, verify_m = 0;
  std::uint64_t samples = 100000;
  std::optional<std::uint64_t> verify_seed;
  double psi_re = 1.0, psi_im = 0.5;
  SimulationOptions sim;
  verify->add_option("N", verify_n, "Copies of psi")->required();
  verify->add_option("Nc", verify_nc, "Copies of conj(psi)")->required();
  verify->add_option("M", verify_m, "Clones")->required();
  verify->add_option("samples", samples, "Sample count");
  verify->add_option("sample_seed", verify_seed, "Seed (same as --seed)");
  verify->add_option("--psi-re", psi_re, "Re psi");
  verify->add_option("--psi-im", psi_im, "Im psi");
  verify->add_option("--workers", sim.workers, "Worker threads, 0 = all cores");
  verify->add_option("--block-size", sim.block_size, "Samples per block");

  for (auto *sub : {report, sweep, optimize, solve, verify}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitDomain;
  }

  std::ostringstream doc;
  int status = kExitOk;
  try {
    if (*report) {
      CloningConfig config = [&] {
        if (report_n_inputs) {
          if (!report_m_clones) throw DomainError("report: give all of N Nc M");
          if (report_n || report_a || report_m) throw DomainError("report: give either N Nc M or --n --a --m");
          return CloningConfig(*report_n_inputs, *report_n_conj, *report_m_clones);
        }
        if (!report_n || !report_a || !report_m) throw DomainError("report: give N Nc M or all of --n --a --m");
        return config_from_asymmetry(*report_n, *report_a, *report_m);
      }();
      const NoiseReport r = noise_report(config);
      if (g.format == "csv") {
        doc << report_csv(r);
      } else {
        doc << json(r).dump(2) << '\n';
      }
    } else if (*sweep) {
      std::vector<double> a_values = sweep_a;
      if (a_values.empty()) {
        if (a_steps < 1) throw DomainError("sweep: --a-steps must be >= 1");
        for (int i = 0; i <= a_steps; ++i) a_values.push_back(static_cast<double>(i) / a_steps);
      }
      const auto rows = sweep_rows(sweep_n, sweep_m, a_values);
      if (g.format == "json") {
        doc << sweep_json(rows).dump(2) << '\n';
      } else {
        doc << to_csv(rows);
      }
    } else if (*optimize) {
      asym.refine_tol = resolve_tol(g, asym.refine_tol);
      const AsymmetryResult r = minimize_asymmetry(opt_n, opt_m, asym);
      json j = r;
      if (!with_trace) j.erase("trace");
      if (g.format == "csv") {
        doc << "n,M,a_star,gain,n_th\n"
            << format_number(r.n) << ',' << format_number(r.m_clones) << ',' << format_number(r.a_star) << ','
            << format_number(r.gain) << ',' << format_number(r.n_th) << '\n';
      } else {
        doc << j.dump(2) << '\n';
      }
    } else if (*solve) {
      search.tol = resolve_tol(g, search.tol);
      if (g.seed) search.seed = *g.seed;
      const SearchResult r = solve_amplifier(alpha, beta, gamma, search);
      if (g.format == "csv") {
        doc << "alpha,beta,gamma,gain,m11,m12,m13,l11,l12,l13,objective,full_residual\n"
            << format_number(alpha) << ',' << format_number(beta) << ',' << format_number(gamma) << ','
            << format_number(r.gain) << ',' << format_number(r.m11) << ',' << format_number(r.m12) << ','
            << format_number(r.m13) << ',' << format_number(r.l11) << ',' << format_number(r.l12) << ','
            << format_number(r.l13) << ',' << format_number(r.objective) << ',' << format_number(r.full_residual)
            << '\n';
      } else {
        doc << json(r).dump(2) << '\n';
      }
    } else if (*verify) {
      const double tol = resolve_tol(g, kStructuralTol);
      const CloningConfig config(verify_n, verify_nc, verify_m);
      const Machine machine = build_machine(config);
      const Complex psi(psi_re, psi_im);
      const std::uint64_t seed = verify_seed.value_or(g.seed.value_or(0));

      const std::vector<Complex> psis{{0.0, 0.0}, psi, {-0.5 * psi_im, 2.0 * psi_re}};
      const StructuralCheck check = check_machine(machine, psis);
      const bool structural_ok = check.commutation_residual <= tol && check.symplectic_residual <= tol &&
                                 check.mean_error <= tol && check.clone_spread <= tol &&
                                 check.variance_error <= tol;
      const EmpiricalMoments e = simulate(machine, {samples, seed, psi}, sim);
      const NoiseReport r = noise_report(config);
      const ComparisonSummary s = compare_to_analytic(e, r, machine.layout);
      const bool passed = structural_ok && !s.flagged;
      status = passed ? kExitOk : kExitFailed;

      if (g.format == "json") {
        doc << json{{"config", config},       {"samples", samples},   {"seed", seed},
                    {"psi", {psi_re, psi_im}}, {"tol", tol},           {"structural", check},
                    {"structural_ok", structural_ok}, {"report", r},    {"moments", e},
                    {"comparison", s},        {"passed", passed}}
                   .dump(2)
            << '\n';
      } else if (g.format == "csv") {
        doc << z_csv(s, e);
      } else {
        char line[512];
        std::snprintf(line, sizeof line,
                      "config (%d,%d,%d) gain %.12g samples %llu seed %llu psi %g%+gi\n"
                      "commutation %.3e  symplectic %.3e  mean %.3e  clone spread %.3e  variance %.3e  "
                      "(tol %.1e) %s\n",
                      config.n_inputs(), config.n_conj(), config.m_clones(), r.gain,
                      static_cast<unsigned long long>(samples), static_cast<unsigned long long>(seed), psi_re,
                      psi_im, check.commutation_residual, check.symplectic_residual, check.mean_error,
                      check.clone_spread, check.variance_error, tol, structural_ok ? "ok" : "FAIL");
        doc << line << z_table(s, e);
        std::snprintf(line, sizeof line, "max |z| %.3f (threshold %.1f) %s\n", s.max_abs_z, s.threshold,
                      passed ? "PASS" : "FAIL");
        doc << line;
      }
    }
  } catch (const DomainError &e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const ConvergenceError &e) {
    err << "error: " << e.what() << '\n';
    return kExitNoConvergence;
  }

  if (!g.out_path.empty()) {
    std::ofstream file(g.out_path);
    if (!file) {
      err << "error: cannot write " << g.out_path << '\n';
      return kExitFailed;
    }
    file << doc.str();
  } else {
    out << doc.str();
  }
  return status;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  std::vector<const char *> argv{"pciclone"};
  for (const auto &a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace pciclone::cli
