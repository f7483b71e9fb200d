#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rsp/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = rsp::cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("rsp_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::size_t count_lines(const fs::path& p) {
  std::ifstream f(p);
  std::size_t n = 0;
  for (std::string line; std::getline(f, line);) ++n;
  return n;
}

}  // namespace

TEST(Cli, RunForcedOutcome) {
  const auto r = cli({"run", "--alpha", "0.6", "--beta", "0.8", "--force-outcome", "U1,00,00"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("outcome U1,00,00"), std::string::npos);
  EXPECT_NE(r.out.find("gates CX12 H1 Z1"), std::string::npos);
  EXPECT_NE(r.out.find("probability 0.062500000000"), std::string::npos);
  EXPECT_NE(r.out.find("bob |00> 0.600000000000+0.000000000000i"), std::string::npos);
  EXPECT_NE(r.out.find("bob |11> 0.800000000000+0.000000000000i"), std::string::npos);
  EXPECT_NE(r.out.find("fidelity 1.000000000000"), std::string::npos);
}

TEST(Cli, RunIsReproducibleForSeed) {
  const auto a = cli({"run", "--alpha", "0.6", "--beta", "0.8", "--seed", "11"});
  const auto b = cli({"run", "--alpha", "0.6", "--beta", "0.8", "--seed", "11"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, RunWithNoise) {
  const auto r = cli({"run", "--force-outcome", "U2,10,10", "--noise", "phase-flip", "--eta", "0.1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("noise phase-flip eta 0.100000000000 fidelity_exact"), std::string::npos);
  EXPECT_NE(r.out.find("fidelity_truncated"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"run", "--alpha", "1", "--beta", "1"}).code, 2);
  EXPECT_EQ(cli({"security", "--mode", "sideways"}).code, 2);
  EXPECT_EQ(cli({"run", "--force-outcome", "U3,00,00"}).code, 2);
  const auto impossible = cli({"run", "--force-outcome", "U1,00,01"});
  EXPECT_EQ(impossible.code, 3);
  EXPECT_NE(impossible.err.find("probability"), std::string::npos);
  const fs::path dir = scratch("io");
  EXPECT_EQ(cli({"sweep", "--steps", "2", "--noise", "bit-flip", "--output",
                 (dir / "missing" / "x.csv").string()})
                .code,
            4);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST(Cli, SweepWritesDefaultGrid) {
  const fs::path dir = scratch("sweep");
  const auto r = cli({"sweep", "--noise", "all", "--output", (dir / "s.csv").string(), "--svg",
                      (dir / "s.svg").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_lines(dir / "s.csv"), 67u);
  EXPECT_TRUE(fs::exists(dir / "s.svg"));
}

TEST(Cli, OutputDirectoryFromEnvironment) {
  const fs::path dir = scratch("env");
  ::setenv("RSP_OUTPUT_DIR", dir.c_str(), 1);
  const auto r = cli({"sweep", "--noise", "depolarizing", "--steps", "3", "--model", "exact"});
  ::unsetenv("RSP_OUTPUT_DIR");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_lines(dir / "sweep.csv"), 4u);
}

TEST(Cli, ConfigFileWithFlagOverride) {
  const fs::path dir = scratch("config");
  {
    std::ofstream f(dir / "rsp.toml");
    f << "alpha = 0.6\nbeta = 0.8\nforce-outcome = \"U1,00,00\"\n";
  }
  const auto from_file = cli({"run", "--config", (dir / "rsp.toml").string()});
  ASSERT_EQ(from_file.code, 0) << from_file.err;
  EXPECT_NE(from_file.out.find("bob |00> 0.600000000000"), std::string::npos);
  EXPECT_NE(from_file.out.find("outcome U1,00,00"), std::string::npos);
  const auto overridden =
      cli({"run", "--config", (dir / "rsp.toml").string(), "--force-outcome", "U2,11,11"});
  ASSERT_EQ(overridden.code, 0) << overridden.err;
  EXPECT_NE(overridden.out.find("outcome U2,11,11"), std::string::npos);
}

TEST(Cli, VerifyPasses) {
  const auto r = cli({"verify"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("32 entries at 0.176776695297"), std::string::npos);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
  EXPECT_NE(r.out.find("3 repaired"), std::string::npos);
  EXPECT_NE(r.out.find("discrepancy report"), std::string::npos);
}

TEST(Cli, SecurityOutside) {
  const auto r = cli({"security", "--mode", "outside", "--decoys", "5", "--trials", "20000", "--seed", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("analytic 0.762695312500"), std::string::npos);
  EXPECT_NE(r.out.find("curve 5 0.762695312500"), std::string::npos);
  EXPECT_EQ(cli({"security", "--mode", "outside", "--strategy", "denial-of-service"}).code, 2);
}

TEST(Cli, SecurityInside) {
  const auto r = cli({"security", "--mode", "inside", "--samples", "20", "--seed", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("bound_chain holds"), std::string::npos);
  EXPECT_NE(r.out.find("verdict mixed for every sample"), std::string::npos);
  const auto t = cli({"security", "--mode", "inside", "--trivial"});
  ASSERT_EQ(t.code, 0) << t.err;
  EXPECT_NE(t.out.find("purity_env 1.000000000000"), std::string::npos);
  EXPECT_NE(t.out.find("target_dependence 0.000000000000"), std::string::npos);
}
