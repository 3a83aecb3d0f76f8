#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "kelvin/cli.hpp"
#include "kelvin/kelvin.hpp"
#include "kelvin/scalars.hpp"

using namespace kelvin;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "kelvin");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(s);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!s.empty() && s.back() == ',') out.emplace_back();
  return out;
}

class EnvGuard {
 public:
  EnvGuard(const char* name, const char* value) : name_(name) { setenv(name, value, 1); }
  ~EnvGuard() { unsetenv(name_); }

 private:
  const char* name_;
};

}  // namespace

TEST(CliEval, BerAtOrigin) {
  const CliRun r = run({"eval", "ber", "--nu", "0", "--x", "0"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out.rfind("ber(nu=0, x=0) = 1\n", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("method series"), std::string::npos);
}

TEST(CliEval, OrderZeroDerivativeRelation) {
  const CliRun r = run({"eval", "--fn", "dber", "--nu", "0", "--x", "1", "--format", "csv"});
  ASSERT_EQ(r.code, kExitOk);
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], "fn,nu,x,value,err,method");
  const auto cells = split(rows[1]);
  const KelvinQuad q = kelvin_all(0.0, 1.0);
  EXPECT_NEAR(std::stod(cells[3]), -kPi / 2.0 * q.bei - q.ker, 1e-15);
  EXPECT_EQ(cells[5], "integer_sum");
}

TEST(CliEval, KerAtOriginIsDomainError) {
  const CliRun r = run({"eval", "ker", "--nu", "0", "--x", "0"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("DomainError"), std::string::npos);
  EXPECT_NE(r.err.find("x must be > 0"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
}

TEST(CliEval, UsageErrors) {
  EXPECT_EQ(run({"eval", "foo", "--nu", "0", "--x", "1"}).code, kExitUsage);
  EXPECT_EQ(run({"eval", "ber", "--x", "1"}).code, kExitUsage);
  EXPECT_EQ(run({"eval", "--nu", "0", "--x", "1"}).code, kExitUsage);
  EXPECT_EQ(run({"eval", "ber", "--nu", "abc", "--x", "1"}).code, kExitUsage);
  EXPECT_EQ(run({"eval", "ber", "--nu", "0", "--x", "1", "--format", "xml"}).code, kExitUsage);
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
}

TEST(CliEval, Help) {
  const CliRun r = run({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("verify"), std::string::npos);
}

TEST(CliEval, MaxTermsEnvironment) {
  {
    EnvGuard env("KELVIN_MAX_TERMS", "zero");
    EXPECT_EQ(run({"eval", "ber", "--nu", "0", "--x", "1"}).code, kExitUsage);
  }
  {
    EnvGuard env("KELVIN_MAX_TERMS", "0");
    EXPECT_EQ(run({"eval", "ber", "--nu", "0", "--x", "1"}).code, kExitUsage);
  }
  {
    EnvGuard env("KELVIN_MAX_TERMS", "400");
    EXPECT_EQ(run({"eval", "ber", "--nu", "0", "--x", "1"}).code, kExitOk);
  }
}

TEST(CliTable, SinglePoint) {
  const CliRun r = run({"table", "--nu", "0", "--x", "1"});
  ASSERT_EQ(r.code, kExitOk);
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], "nu,x,ber,bei,ker,kei,dber,dbei,dker,dkei,method");
  EXPECT_EQ(split(rows[1]).size(), 11u);
}

TEST(CliTable, GridIsNuMajor) {
  const CliRun r = run({"table", "--nu-range", "0:1:0.5", "--x-range", "1:3:1"});
  ASSERT_EQ(r.code, kExitOk);
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 10u);
  const double expect_nu[] = {0, 0, 0, 0.5, 0.5, 0.5, 1, 1, 1};
  const double expect_x[] = {1, 2, 3, 1, 2, 3, 1, 2, 3};
  for (int i = 0; i < 9; ++i) {
    const auto cells = split(rows[i + 1]);
    EXPECT_EQ(std::stod(cells[0]), expect_nu[i]);
    EXPECT_EQ(std::stod(cells[1]), expect_x[i]);
  }
}

TEST(CliTable, ZeroArgumentRow) {
  const CliRun r = run({"table", "--nu", "0", "--x-range", "0:1:1"});
  ASSERT_EQ(r.code, kExitOk);
  const auto cells = split(lines(r.out)[1]);
  ASSERT_EQ(cells.size(), 11u);
  EXPECT_EQ(std::stod(cells[2]), 1.0);
  for (int i = 4; i <= 9; ++i) EXPECT_TRUE(cells[i].empty()) << i;
  EXPECT_EQ(cells[10], "x0:ker_kei_undefined");
}

TEST(CliTable, InvalidRanges) {
  EXPECT_EQ(run({"table", "--nu-range", "0:1:0", "--x", "1"}).code, kExitUsage);
  EXPECT_EQ(run({"table", "--nu-range", "0:1:-1", "--x", "1"}).code, kExitUsage);
  EXPECT_EQ(run({"table", "--nu-range", "1:0:0.5", "--x", "1"}).code, kExitUsage);
  EXPECT_EQ(run({"table", "--nu-range", "0:1", "--x", "1"}).code, kExitUsage);
  EXPECT_EQ(run({"table", "--nu", "0", "--nu-range", "0:1:1", "--x", "1"}).code, kExitUsage);
  EXPECT_EQ(run({"table", "--x", "1"}).code, kExitUsage);
  EXPECT_EQ(run({"table", "--nu", "0", "--x", "-1"}).code, kExitUsage);
}

TEST(CliTable, Deterministic) {
  const std::vector<std::string> args = {"table", "--nu-range", "-1.5:2:0.5", "--x-range",
                                         "0:4:0.5"};
  const CliRun a = run(args);
  const CliRun b = run(args);
  auto serial_args = args;
  serial_args.push_back("--serial");
  const CliRun c = run(serial_args);
  ASSERT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
}

TEST(CliTable, PlainFormat) {
  const CliRun r = run({"table", "--nu", "0", "--x", "0", "--format", "plain"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(lines(r.out)[0], "nu x ber bei ker kei dber dbei dker dkei method");
}

TEST(CliVerify, ReflectionPasses) {
  const CliRun r = run({"verify", "--suite", "reflection"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(lines(r.out)[0], "name,nu,x,lhs,rhs,abs_diff,tol,pass");
  EXPECT_EQ(r.out.find(",false"), std::string::npos);
}

TEST(CliVerify, LogWeightedSuitePasses) { EXPECT_EQ(run({"verify", "--suite", "theorem5"}).code, kExitOk); }

TEST(CliVerify, DegenerateToleranceAlwaysPasses) {
  EXPECT_EQ(run({"verify", "--suite", "all", "--tol", "1e300"}).code, kExitOk);
}

TEST(CliVerify, FailureExitCode) {
  const CliRun r = run({"verify", "--suite", "brychkov", "--tol", "1e-300"});
  EXPECT_EQ(r.code, kExitVerifyFailed);
  EXPECT_NE(r.out.find(",false"), std::string::npos);
}

TEST(CliVerify, ConfigErrors) {
  EXPECT_EQ(run({"verify", "--suite", "nope"}).code, kExitUsage);
  EXPECT_EQ(run({"verify", "--tol", "0"}).code, kExitUsage);
  EXPECT_EQ(run({"verify", "--tol", "-1"}).code, kExitUsage);
}

TEST(CliVerify, PlainAndDeterministic) {
  const CliRun a = run({"verify", "--suite", "appendix", "--format", "plain"});
  ASSERT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out.rfind("PASS ", 0), 0u);
  const CliRun b = run({"verify", "--suite", "all"});
  const CliRun c = run({"verify", "--suite", "all", "--serial"});
  EXPECT_EQ(b.out, c.out);
}

TEST(CliBench, SinglePoint) {
  const CliRun r = run({"bench", "--nu", "0.5", "--x", "1", "--repeats", "1"});
  ASSERT_EQ(r.code, kExitOk);
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], "nu,x,closed_form_ns,quadrature_ns,ratio");
  EXPECT_EQ(rows[2].rfind("median,", 0), 0u);
}

TEST(CliBench, ConfigErrors) {
  EXPECT_EQ(run({"bench", "--nu-range", "1:0:1", "--x", "1"}).code, kExitUsage);
  EXPECT_EQ(run({"bench", "--nu", "-0.5", "--x", "1"}).code, kExitUsage);
  EXPECT_EQ(run({"bench", "--nu", "0.5", "--x", "0"}).code, kExitUsage);
  EXPECT_EQ(run({"bench", "--repeats", "0"}).code, kExitUsage);
}

TEST(CliOut, WritesFile) {
  const auto path = std::filesystem::temp_directory_path() / "kelvin_cli_out_test.csv";
  const CliRun r = run({"table", "--nu", "0.5", "--x", "2", "--out", path.string()});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream content;
  content << in.rdbuf();
  EXPECT_EQ(content.str(), run({"table", "--nu", "0.5", "--x", "2"}).out);
  std::filesystem::remove(path);
}

TEST(CliOut, BadPath) {
  const CliRun r = run({"table", "--nu", "0", "--x", "1", "--out", "/nonexistent-dir/t.csv"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("ConfigError"), std::string::npos);
}
