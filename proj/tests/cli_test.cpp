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

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gtest/gtest.h"

using nlohmann::json;
using pciclone::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string> &args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_cells(const std::string &text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

class ScopedEnv {
 public:
  ScopedEnv(const char *name, const char *value) : name_(name) { ::setenv(name, value, 1); }
  ~ScopedEnv() { ::unsetenv(name_); }

 private:
  const char *name_;
};

}  // namespace

TEST(cli, report_balanced_pair) {
  const Result r = call({"report", "1", "1", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["f_clone"].get<double>(), 16.0 / 17.0, 1e-12);
  EXPECT_NEAR(j["var_clone"].get<double>(), 0.5625, 1e-12);
  EXPECT_EQ(j["config"]["m_anticlones"].get<int>(), 2);
}

TEST(cli, report_three_clones) {
  const json j = json::parse(call({"report", "1", "1", "3"}).out);
  EXPECT_NEAR(j["f_clone"].get<double>(), 0.9, 1e-12);
  EXPECT_NEAR(j["baseline_f"].get<double>(), 6.0 / 7.0, 1e-12);
}

TEST(cli, report_rejects_attenuation) {
  const Result r = call({"report", "2", "1", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("M >= N"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST(cli, report_asymmetry_parameterization) {
  const Result a = call({"report", "--n", "2", "--a", "0.5", "--m", "2"});
  const Result b = call({"report", "1", "1", "2"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(call({"report", "--n", "3", "--a", "0.5", "--m", "2"}).code, 2);
  EXPECT_EQ(call({"report", "--n", "2", "--a", "0.5"}).code, 2);
  EXPECT_EQ(call({"report", "1", "1", "2", "--n", "2"}).code, 2);
}

TEST(cli, report_csv_and_null_anticlones) {
  const Result r = call({"report", "2", "0", "2", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv_cells(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0][0], "N");
  EXPECT_EQ(rows[1][3], "0");
  EXPECT_EQ(rows[1][6], "");  // n_th_anticlone absent

  const json j = json::parse(call({"report", "2", "0", "2"}).out);
  EXPECT_TRUE(j["f_anticlone"].is_null());
}

TEST(cli, sweep_identity_row) {
  const Result r = call({"sweep", "8", "8", "--a", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv_cells(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(std::stod(rows[1][6]), 0.0);
}

TEST(cli, sweep_curves_meet_at_a_one) {
  const Result r = call({"sweep", "8", "16", "32", "64", "--a", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv_cells(r.out);
  ASSERT_EQ(rows.size(), 4u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_NEAR(std::stod(rows[i][6]), 0.125, 1e-15);
    EXPECT_NEAR(std::stod(rows[i][7]), 0.353553, 1e-6);
  }
}

TEST(cli, sweep_standard_reduction) {
  const auto rows = csv_cells(call({"sweep", "8", "16", "--a", "0"}).out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_NEAR(std::stod(rows[1][6]), 1.0 / 8.0 - 1.0 / 16.0, 1e-15);
}

TEST(cli, sweep_header_and_order) {
  const Result r = call({"sweep", "8", "32", "4", "16", "--a-steps", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "n,M,a,N,Nc,G,n_th,sqrt_n_th");
  const auto rows = csv_cells(r.out);
  // M = 4 needs N = (1 - a) 8 <= 4, so a >= 1/2.
  ASSERT_EQ(rows.size(), 1u + 3u + 5u + 5u);
  EXPECT_EQ(rows[1][2], "0.5");
  for (std::size_t i = 2; i < rows.size(); ++i) {
    const double m_prev = std::stod(rows[i - 1][1]), m = std::stod(rows[i][1]);
    const double a_prev = std::stod(rows[i - 1][2]), a = std::stod(rows[i][2]);
    EXPECT_TRUE(m_prev < m || (m_prev == m && a_prev < a)) << i;
  }
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_DOUBLE_EQ(std::stod(rows[i][3]) + std::stod(rows[i][4]), 8.0);
    EXPECT_EQ(std::stod(rows[i][7]), std::sqrt(std::stod(rows[i][6])));
  }
}

TEST(cli, sweep_csv_round_trip) {
  std::vector<double> a_values;
  for (int i = 0; i <= 97; ++i) a_values.push_back(i / 97.0);
  const auto rows = pciclone::cli::sweep_rows(8.0, {9.0, 16.0, 80000.0, 8.5}, a_values);
  const auto back = pciclone::cli::parse_sweep_csv(pciclone::cli::to_csv(rows));
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(back[i].n, rows[i].n);
    EXPECT_EQ(back[i].M, rows[i].M);
    EXPECT_EQ(back[i].a, rows[i].a);
    EXPECT_EQ(back[i].N, rows[i].N);
    EXPECT_EQ(back[i].Nc, rows[i].Nc);
    EXPECT_EQ(back[i].G, rows[i].G);
    EXPECT_EQ(back[i].n_th_clone, rows[i].n_th_clone);
    EXPECT_EQ(back[i].sqrt_n_th, rows[i].sqrt_n_th);
  }
  EXPECT_THROW(pciclone::cli::parse_sweep_csv("n,M\n"), std::invalid_argument);
}

TEST(cli, sweep_errors_and_json) {
  EXPECT_EQ(call({"sweep", "8"}).code, 2);
  EXPECT_EQ(call({"sweep", "0.5", "8"}).code, 2);
  EXPECT_EQ(call({"sweep", "8", "16", "--a", "1.5"}).code, 2);
  const Result r = call({"sweep", "8", "16", "--a", "0", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  ASSERT_EQ(j.size(), 1u);
  EXPECT_NEAR(j[0]["n_th_clone"].get<double>(), 0.0625, 1e-15);
  EXPECT_EQ(j[0]["Nc"].get<double>(), 0.0);
  EXPECT_TRUE(j[0]["integral"].get<bool>());

  const json k = json::parse(call({"sweep", "8", "16", "--a", "0.3", "--format", "json"}).out);
  EXPECT_FALSE(k[0]["integral"].get<bool>());
}

TEST(cli, optimize_examples) {
  const json identity = json::parse(call({"optimize", "8", "8"}).out);
  EXPECT_EQ(identity["a_star"].get<double>(), 0.0);
  EXPECT_FALSE(identity.contains("trace"));

  const Result r = call({"optimize", "8", "16", "--trace"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_GT(j["a_star"].get<double>(), 0.0);
  EXPECT_LT(j["a_star"].get<double>(), 0.5);
  EXPECT_FALSE(j["trace"].empty());

  EXPECT_EQ(call({"optimize", "8", "0.5"}).code, 2);
}

TEST(cli, solve_examples) {
  const Result r = call({"solve", "0", "1", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(json::parse(r.out)["gain"].get<double>(), 2.0, 1e-9);
  EXPECT_EQ(call({"solve", "2", "1", "1"}).code, 2);
  EXPECT_EQ(call({"solve", "1", "1", "2", "--restarts", "0"}).code, 2);
  EXPECT_EQ(call({"solve", "1", "1", "2", "--tol", "1e-300"}).code, 3);
}

TEST(cli, solve_is_deterministic_per_seed) {
  const Result a = call({"solve", "0.3", "1", "2.5", "--seed", "9"});
  const Result b = call({"solve", "0.3", "1", "2.5", "--seed", "9"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(cli, verify_examples) {
  const Result pass = call({"verify", "1", "1", "2", "1000000", "42"});
  EXPECT_EQ(pass.code, 0) << pass.out << pass.err;
  EXPECT_NE(pass.out.find("PASS"), std::string::npos);

  EXPECT_EQ(call({"verify", "1", "0", "1", "100", "7"}).code, 0);
  EXPECT_EQ(call({"verify", "3", "1", "2", "1000", "1"}).code, 2);
  EXPECT_EQ(call({"verify", "1", "1", "2", "1", "1"}).code, 2);
}

TEST(cli, verify_json_is_deterministic) {
  const std::vector<std::string> args{"verify", "2", "1", "3", "20000", "--seed", "5", "--format", "json"};
  const Result a = call(args);
  const Result b = call(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const json j = json::parse(a.out);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["seed"].get<std::uint64_t>(), 5u);
  EXPECT_EQ(j["moments"]["modes"].size(), j["comparison"]["modes"].size());
}

TEST(cli, tolerance_from_environment) {
  {
    ScopedEnv env("PCICLONE_TOL", "1e-30");
    EXPECT_EQ(call({"verify", "1", "1", "2", "1000", "1"}).code, 1);
    EXPECT_EQ(call({"verify", "1", "1", "2", "1000", "1", "--tol", "1e-9"}).code, 0);
  }
  {
    ScopedEnv env("PCICLONE_TOL", "not-a-number");
    EXPECT_EQ(call({"solve", "0", "1", "1"}).code, 2);
  }
  EXPECT_EQ(call({"verify", "1", "1", "2", "1000", "1"}).code, 0);
}

TEST(cli, out_file) {
  const auto path = std::filesystem::temp_directory_path() / "pciclone_cli_test_sweep.csv";
  std::filesystem::remove(path);
  const Result r = call({"sweep", "8", "16", "--a-steps", "2", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(text.str(), call({"sweep", "8", "16", "--a-steps", "2"}).out);
  std::filesystem::remove(path);
}

TEST(cli, usage_errors) {
  EXPECT_EQ(call({}).code, 2);
  EXPECT_EQ(call({"bogus"}).code, 2);
  EXPECT_EQ(call({"report", "1", "1", "2", "--format", "xml"}).code, 2);
  EXPECT_EQ(call({"--help"}).code, 0);
}
