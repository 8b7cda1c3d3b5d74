// Copyright 2026 The mcnot Authors
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

#include "mcnot/cli.h"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace mcnot;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), {}};
}

class CliFiles : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = std::filesystem::temp_directory_path() /
               ("mcnot_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        std::filesystem::create_directories(dir_);
    }
    void TearDown() override { std::filesystem::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    std::string write(const std::string& name, const std::string& contents) const {
        std::ofstream(dir_ / name) << contents;
        return path(name);
    }

    std::filesystem::path dir_;
};

}  // namespace

TEST(cli, verify_passes) {
    const auto r = run({"protocol", "verify"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("PASS"), std::string::npos);
}

TEST(cli, verify_fails_with_impossible_tolerance) {
    const auto r = run({"protocol", "verify", "--tol", "1e-20"});
    EXPECT_EQ(r.code, kExitVerificationFailed);
    EXPECT_NE(r.out.find("FAIL"), std::string::npos);
}

TEST(cli, verify_json_report) {
    const auto r = run({"protocol", "verify", "--json"});
    ASSERT_EQ(r.code, kExitOk);
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_TRUE(doc["pass"].get<bool>());
    ASSERT_EQ(doc["branches"].size(), 8u);
    EXPECT_TRUE(doc["branches"].contains("odd,even,1"));
    for (const auto& [key, b] : doc["branches"].items()) {
        EXPECT_LT(b["deviation"].get<double>(), 1e-12) << key;
        EXPECT_NEAR(b["probability"].get<double>(), 0.125, 1e-12) << key;
    }
    EXPECT_NEAR(doc["probability_sum"].get<double>(), 1.0, 1e-12);
}

TEST(cli, invalid_input_exit_codes) {
    EXPECT_EQ(run({"protocol", "verify", "--bogus"}).code, kExitInvalidInput);
    EXPECT_EQ(run({}).code, kExitInvalidInput);
    EXPECT_EQ(run({"protocol", "run", "--control", "2"}).code, kExitInvalidInput);
    EXPECT_EQ(run({"protocol", "run", "--force", "even,maybe,0"}).code, kExitInvalidInput);
    EXPECT_EQ(run({"protocol", "run", "--shots", "0"}).code, kExitInvalidInput);
    EXPECT_EQ(run({"wire", "spectrum", "--sites", "1"}).code, kExitInvalidInput);
    EXPECT_EQ(run({"wire", "phase-scan", "--vb", "0.05", "--sites", "0"}).code, kExitInvalidInput);
    EXPECT_EQ(run({"flux", "splitting", "--np-l", "2"}).code, kExitInvalidInput);
    EXPECT_EQ(run({"flux", "splitting", "--q-l", "0.3"}).code, kExitInvalidInput);
    EXPECT_EQ(run({"flux", "potential", "--alpha", "-1"}).code, kExitInvalidInput);
    EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST(cli, forced_run_gives_cnot_of_one_one) {
    const auto r = run({"protocol", "run", "--control", "1", "--target", "0", "--shots", "4", "--force", "odd,even,1"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("odd-even-1,4\n"), std::string::npos);
    EXPECT_NE(r.out.find("# mean_fidelity=1\n"), std::string::npos);
    EXPECT_NE(r.out.find("# last_output=0+0i 0+0i 0+0i 1+0i"), std::string::npos) << r.out;
}

TEST(cli, random_run_reports_unit_fidelity) {
    const auto r = run({"protocol", "run", "--control", "+", "--target", "-", "--shots", "200", "--seed", "3"});
    ASSERT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("branch,count\n"), std::string::npos);
    EXPECT_NE(r.out.find("# mean_fidelity=1\n"), std::string::npos) << r.out;
}

TEST_F(CliFiles, seeded_runs_are_byte_identical) {
    const std::vector<std::string> base{"protocol", "run", "--control", "+", "--shots", "500", "--seed", "42", "-o"};
    auto a = base, b = base, c = base;
    a.push_back(path("a.csv"));
    b.push_back(path("b.csv"));
    c.push_back(path("c.csv"));
    c[7] = "43";
    ASSERT_EQ(run(a).code, kExitOk);
    ASSERT_EQ(run(b).code, kExitOk);
    ASSERT_EQ(run(c).code, kExitOk);
    EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
    EXPECT_NE(slurp(path("a.csv")), slurp(path("c.csv")));
    EXPECT_FALSE(std::filesystem::exists(path("a.csv.tmp")));
}

TEST_F(CliFiles, json_report_written_to_file) {
    ASSERT_EQ(run({"protocol", "verify", "-o", path("r.json")}).code, kExitOk);
    EXPECT_EQ(nlohmann::json::parse(slurp(path("r.json")))["branches"].size(), 8u);
}

TEST(cli, table_matches_derivation) {
    const auto r = run({"protocol", "table"});
    ASSERT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("p1,p2,m,gate_c,gate_t,derived_c,derived_t,match\n"), std::string::npos);
    EXPECT_NE(r.out.find("odd,odd,1,Z,I,Z,I,yes\n"), std::string::npos) << r.out;
    EXPECT_EQ(r.out.find(",no\n"), std::string::npos);
}

TEST_F(CliFiles, malformed_profiles_rejected) {
    for (const std::string& doc :
         {std::string(R"([{"start_site": 1)"), std::string("{}"), std::string(R"([{"start_site": 1, "mu": 0}])"),
          std::string(R"([{"start_site": -1, "end_site": 4, "mu": 0}])"),
          std::string(R"([{"start_site": 0, "end_site": 30, "mu": 0}, {"start_site": 20, "end_site": 40, "mu": 0}])"),
          std::string(R"([{"start_site": 40, "end_site": 60, "mu": 0}])")}) {
        const auto r = run({"wire", "keyboard", "--sites", "50", "--profile", write("p.json", doc)});
        EXPECT_EQ(r.code, kExitInvalidInput) << doc;
        EXPECT_FALSE(r.err.empty());
    }
    EXPECT_EQ(run({"wire", "keyboard", "--sites", "50", "--profile", path("missing.json")}).code, kExitInvalidInput);
}

TEST_F(CliFiles, csv_outputs_start_with_parameter_comments) {
    const std::string profile = write("p.json", R"([{"start_site": 20, "end_site": 100, "mu": 0}])");
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"wire", "spectrum", "--sites", "20"},
             {"wire", "phase-scan", "--sites", "60", "--steps", "3"},
             {"wire", "keyboard", "--sites", "120", "--profile", profile},
             {"flux", "potential", "--grid", "16"},
             {"protocol", "run", "--shots", "3"},
             {"protocol", "table"}}) {
        const auto r = run(args);
        ASSERT_EQ(r.code, kExitOk) << args[1] << ": " << r.err;
        EXPECT_EQ(r.out.rfind("# mcnot ", 0), 0u) << args[1];
    }
}

TEST_F(CliFiles, keyboard_reports_two_modes_for_one_segment) {
    const auto r = run({"wire", "keyboard", "--sites", "120", "--profile",
                        write("p.json", R"([{"start_site": 20, "end_site": 100, "mu": 0}])")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("site,weight_mode_1,weight_mode_2\n"), std::string::npos) << r.out.substr(0, 600);
}

TEST(cli, phase_scan_reports_critical_mu) {
    const auto r = run({"wire", "phase-scan", "--sites", "60", "--steps", "3"});
    ASSERT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("# critical_mu=0.173205"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("mu,min_abs_energy,topological\n"), std::string::npos);
}

TEST(cli, flux_potential_lists_two_minima_at_half_flux) {
    const auto r = run({"flux", "potential", "--grid", "8"});
    ASSERT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("degenerate_lowest=2"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("phi1,phi3,energy\n"), std::string::npos);
}

TEST(cli, flux_splitting_lines) {
    auto r = run({"flux", "splitting"});
    ASSERT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("q=0 "), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("parity=even"), std::string::npos);
    r = run({"flux", "splitting", "--np-l", "1"});
    ASSERT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("parity=odd"), std::string::npos);
    EXPECT_NE(r.out.find("delta=0"), std::string::npos) << r.out;
}

TEST(cli, forced_even_branch_run) {
    const auto r = run({"protocol", "run", "--control", "1", "--target", "0", "--shots", "8", "--force", "even,even,0"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("even-even-0,8\n"), std::string::npos);
    EXPECT_NE(r.out.find("# min_fidelity=1\n"), std::string::npos);
    EXPECT_NE(r.out.find("# last_output=0+0i 0+0i 0+0i 1+0i"), std::string::npos) << r.out;
}

TEST(cli, uniform_wire_spectrum_has_two_zero_rows) {
    const auto r = run({"wire", "spectrum"});
    ASSERT_EQ(r.code, kExitOk);
    std::istringstream in(r.out);
    std::string line;
    int rows = 0, zeros = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line == "index,energy") continue;
        ++rows;
        if (std::abs(std::stod(line.substr(line.find(',') + 1))) < 1e-4) ++zeros;
    }
    EXPECT_EQ(rows, 1600);
    EXPECT_EQ(zeros, 2);
}

TEST(cli, flux_potential_grid_rows) {
    const auto r = run({"flux", "potential", "--alpha", "1.2", "--flux", "0.5", "--grid", "201"});
    ASSERT_EQ(r.code, kExitOk);
    std::istringstream in(r.out);
    std::string line;
    int rows = 0, minima = 0;
    while (std::getline(in, line)) {
        if (line.rfind("# minimum ", 0) == 0) ++minima;
        else if (!line.empty() && line[0] != '#' && line != "phi1,phi3,energy") ++rows;
    }
    EXPECT_EQ(rows, 201 * 201);
    EXPECT_GE(minima, 2);
    EXPECT_NE(r.out.find("degenerate_lowest=2"), std::string::npos);
}

TEST(cli, flux_splitting_interference_cases) {
    auto r = run({"flux", "splitting", "--np-l", "1", "--np-r", "0", "--dot", "0"});
    ASSERT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find(" delta=0.000000000000e+00 "), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("parity=odd"), std::string::npos);
    r = run({"flux", "splitting", "--np-l", "1", "--np-r", "0", "--dot", "1"});
    ASSERT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find(" delta=1.000000000000e-04 "), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("parity=even"), std::string::npos);
}
