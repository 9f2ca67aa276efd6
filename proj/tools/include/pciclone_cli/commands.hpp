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


#ifndef PCICLONE_CLI_COMMANDS_HPP
#define PCICLONE_CLI_COMMANDS_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace pciclone::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitNoConvergence = 3;

/// Runs one command line (argv[0] is the program name). Documents go to
/// `out` (or the --out file), diagnostics to `err`.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

/// Convenience overload; args exclude the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// One line of the asymmetry sweep.
struct SweepRow {
  double n;
  double M;
  double a;
  double N;
  double Nc;
  double G;
  double n_th_clone;
  double sqrt_n_th;
};

inline constexpr const char *kSweepHeader = "n,M,a,N,Nc,G,n_th,sqrt_n_th";

/// Rows for every feasible (M, a), M ascending then a ascending.
std::vector<SweepRow> sweep_rows(double n, std::vector<double> m_values, std::vector<double> a_values);

/// 17 significant digits.
std::string format_number(double value);

std::string to_csv(const std::vector<SweepRow> &rows);
std::vector<SweepRow> parse_sweep_csv(const std::string &text);

}  // namespace pciclone::cli

#endif  // PCICLONE_CLI_COMMANDS_HPP
