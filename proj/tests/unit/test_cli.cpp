// Copyright 2026 The channel-forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "channelforge/io.hpp"
#include "channelforge/noise.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kData = CF_TEST_DATA_DIR;

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("cf_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  CliRun run(const std::string& args) const {
    const fs::path out = dir_ / "stdout.txt", err = dir_ / "stderr.txt";
    const std::string cmd = std::string(CF_CLI_PATH) + " " + args + " >" + out.string() + " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    CliRun r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

  std::string data(const std::string& name) const { return kData + "/" + name; }
  fs::path tmp(const std::string& name) const { return dir_ / name; }

  fs::path write_channel(const std::string& name, const channelforge::Channel& ch) const {
    const fs::path p = tmp(name);
    channelforge::write_text_file(p, channelforge::channel_to_json(ch).dump());
    return p;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, IdentityFidelityIsOne) {
  const CliRun r = run("channel fidelity " + data("identity.json") + " " + data("identity.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_DOUBLE_EQ(std::stod(r.out), 1.0);
}

TEST_F(Cli, BuildMatchesFactory) {
  const CliRun r = run("channel build --name amplitude_damping --gamma 0.1");
  ASSERT_EQ(r.code, 0) << r.err;
  const channelforge::Channel got = channelforge::channel_from_json(json::parse(r.out));
  EXPECT_LT(channelforge::max_abs(got.choi() - channelforge::amplitude_damping(0.1).choi()), 1e-15);
}

TEST_F(Cli, ConvertToKraus) {
  const fs::path f = write_channel("ad.json", channelforge::amplitude_damping(0.3));
  const CliRun r = run("channel convert " + f.string() + " --to kraus");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("kraus"), std::string::npos);
}

TEST_F(Cli, ValidateRejectsNegativeEigenvalue) {
  const CliRun r = run("channel validate " + data("bad_channel.json"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("min eigenvalue -0.2"), std::string::npos) << r.err;
  EXPECT_EQ(run("channel validate " + data("identity.json")).code, 0);
}

TEST_F(Cli, DilateAmplitudeDampingQuditOverhead) {
  const fs::path f = write_channel("ad.json", channelforge::amplitude_damping(0.3));
  const CliRun r = run("--out " + tmp("routine.json").string() + " dilate " + f.string() + " --mode qudit");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("overhead 0.584962500721"), std::string::npos) << r.out;
  const json j = json::parse(slurp(tmp("routine.json")));
  EXPECT_LT(j.at("residual").get<double>(), 1e-10);
}

TEST_F(Cli, DilateOverheads) {
  const CliRun id = run("dilate " + data("identity.json") + " --mode ancilla");
  ASSERT_EQ(id.code, 0) << id.err;
  EXPECT_EQ(json::parse(id.out).at("overhead").get<double>(), 0.0);

  std::mt19937_64 rng(91);
  std::normal_distribution<double> g;
  channelforge::KrausSet ks;
  channelforge::ComplexMatrix a(8, 2);
  for (int i = 0; i < 8; ++i)
    for (int k = 0; k < 2; ++k) a(i, k) = channelforge::Complex(g(rng), g(rng));
  const Eigen::HouseholderQR<channelforge::ComplexMatrix> qr(a);
  const channelforge::ComplexMatrix v = qr.householderQ() * channelforge::ComplexMatrix::Identity(8, 2);
  for (int i = 0; i < 4; ++i) ks.operators.push_back(v.middleRows(2 * i, 2));
  const channelforge::Channel ch = channelforge::Channel::from_kraus(ks);
  ASSERT_EQ(ch.kraus_rank(), 4);
  const fs::path f = write_channel("rank4.json", ch);
  const CliRun r = run("dilate " + f.string() + " --mode ancilla");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out).at("overhead").get<double>(), 2.0);
}

TEST_F(Cli, SimulateCircuitFile) {
  const CliRun r = run("simulate " + data("ad_circuit.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_FALSE(r.out.empty());
}

TEST_F(Cli, TailorThetaJob) {
  const CliRun r = run("--config " + data("tailor_theta.json") + " tailor");
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_GE(j.at("achieved_fidelity").get<double>(), j.at("direct_fidelity").get<double>() - 1e-12);
}

TEST_F(Cli, TailorBuildingBlockIsReproducible) {
  const CliRun a = run("--config " + data("tailor_building_block.json") + " --out " + tmp("a.json").string() + " tailor");
  const CliRun b = run("--config " + data("tailor_building_block.json") + " --out " + tmp("b.json").string() + " tailor");
  ASSERT_EQ(a.code, 0) << a.err;
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(slurp(tmp("a.json")), slurp(tmp("b.json")));
}

TEST_F(Cli, FiguresAreByteIdenticalForTheSameSeed) {
  const std::string base = "--config " + data("figures_small.json") + " --seed 5 ";
  const CliRun a = run(base + "--out " + tmp("a.csv").string() + " figures --which fig5a --restarts 1 --evals 100");
  const CliRun b = run(base + "--jobs 3 --out " + tmp("b.csv").string() + " figures --which fig5a --restarts 1 --evals 100");
  ASSERT_EQ(a.code, 0) << a.err;
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(slurp(tmp("a.csv")), slurp(tmp("b.csv")));
  EXPECT_EQ(slurp(tmp("a.csv")).rfind("target_p,q,", 0), 0u);
}

TEST_F(Cli, StochasticFigureWithoutSeedIsAConfigError) {
  const CliRun r = run("--config " + data("figures_small.json") + " figures --which fig5a");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("seed"), std::string::npos);
}

TEST_F(Cli, Fig7cRowsSatisfyOrdering) {
  const CliRun r = run("--config " + data("figures_small.json") + " figures --which fig7c");
  ASSERT_EQ(r.code, 0) << r.err;
  std::stringstream ss(r.out);
  std::string line;
  std::getline(ss, line);
  EXPECT_EQ(line, "P,q,p_best_a,fidelity_best_a,p_best_b,fidelity_best_b");
  int rows = 0;
  while (std::getline(ss, line)) {
    std::vector<double> v;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) v.push_back(std::stod(c));
    ASSERT_EQ(v.size(), 6u);
    EXPECT_LE(v[5], v[3] + 1e-9) << line;
    ++rows;
  }
  EXPECT_EQ(rows, 6);
}

TEST_F(Cli, NetsimReports) {
  const CliRun empty = run("netsim " + data("empty_scenario.json"));
  ASSERT_EQ(empty.code, 0) << empty.err;
  EXPECT_TRUE(json::parse(empty.out).at("fidelities").empty());

  const CliRun bell = run("netsim " + data("bell_dephasing.json"));
  ASSERT_EQ(bell.code, 0) << bell.err;
  EXPECT_NEAR(json::parse(bell.out).at("fidelities").at("bell").get<double>(), 0.9, 1e-12);

  const CliRun bad = run("netsim " + data("malformed_scenario.json"));
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("event"), std::string::npos) << bad.err;
  EXPECT_EQ(run("netsim " + data("dangling_condition_scenario.json")).code, 2);
}

TEST_F(Cli, Resources) {
  const CliRun r = run("resources --n 10 --m 3 --k 1");
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("active_qubits").get<int>(), 30);
  EXPECT_EQ(j.at("qubits_required").get<int>(), 60);
  EXPECT_EQ(run("resources --n 0 --m 3 --k 1").code, 2);
}

TEST_F(Cli, UnknownSubcommandAndMissingFile) {
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("netsim " + tmp("missing.json").string()).code, 2);
}
