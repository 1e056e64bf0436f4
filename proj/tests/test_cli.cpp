#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <ilm/ilm.hpp>

#include "cli.hpp"

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "ilm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int rc = ilm::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {rc, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("ilm_cli_test_" + name)).string();
}

double json_number(const std::string& text, const std::string& key) {
  const auto pos = text.find("\"" + key + "\":");
  return std::stod(text.substr(pos + key.size() + 3));
}

}  // namespace

TEST(Cli, RootsJson) {
  const CliRun r = run({"roots", "--p", "3", "--q", "5", "--gamma", "0.2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"schema\": \"ilm/1\""), std::string::npos);
  EXPECT_NEAR(json_number(r.out, "a"), 1.175571, 1e-6);
  EXPECT_NEAR(json_number(r.out, "A"), 1.902113, 1e-6);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"roots", "--p", "2", "--q", "3", "--gamma", "0.3"}).code, 2);
  EXPECT_EQ(run({"roots", "--p", "3", "--q", "4", "--gamma", "0"}).code, 1);
  EXPECT_EQ(run({"roots", "--bogus"}).code, 1);
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"solve", "--code", "A+,a-,A+", "--eps", "0.6"}).code, 3);
  EXPECT_EQ(run({"solve", "--code", "x+"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, CodesCount) {
  const CliRun r = run({"codes", "--n", "2", "--count-only"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "6\n");
  const CliRun l = run({"--format", "csv", "codes", "--n", "2"});
  EXPECT_EQ(l.out.rfind("code,family\n", 0), 0u);
}

TEST(Cli, TruncatedSpectrumOfSmallPair) {
  const CliRun r = run({"spectrum", "--p", "3", "--q", "4", "--gamma", "0.2", "--code", "a+,a-", "--truncated"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"verdict\": \"Stable\""), std::string::npos);
  EXPECT_NE(r.out.find("\"Ni_minus\": 1"), std::string::npos);
  EXPECT_NE(r.out.find("\"krein\": -1"), std::string::npos);
}

TEST(Cli, ScanCountsStableCodes) {
  const CliRun r = run({"--format", "csv", "scan", "--p", "3", "--q", "4", "--delta", "0.6", "--n", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream is(r.out);
  std::string line;
  int stable = 0;
  while (std::getline(is, line)) stable += line.size() > 7 && line.compare(line.size() - 7, 7, ",Stable") == 0;
  EXPECT_EQ(stable, 5);
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> a{"--format", "json", "--seed", "7", "evolve", "--code", "A+,A-", "--t-max", "2",
                                   "--eps", "0.05"};
  EXPECT_EQ(run(a).out, run(a).out);
  const std::vector<std::string> s{"--threads", "3", "scan", "--n-max", "5"};
  EXPECT_EQ(run(s).out, run(s).out);
}

TEST(Cli, ProfileRoundTripMatchesInProcess) {
  const std::string path = temp_path("profile.json");
  const CliRun s = run({"--out", path, "solve", "--code", "A+,a-,A+", "--gamma", "0.25", "--eps", "0.02"});
  ASSERT_EQ(s.code, 0) << s.err;
  const CliRun viafile = run({"--format", "csv", "spectrum", "--profile-file", path});
  ASSERT_EQ(viafile.code, 0) << viafile.err;
  const CliRun direct = run({"--format", "csv", "spectrum", "--code", "A+,a-,A+", "--gamma", "0.25", "--eps", "0.02"});
  EXPECT_EQ(viafile.out, direct.out);

  const ilm::ModelParams prm{3, 4, 0.25, 0.02};
  const auto rep = ilm::analyze_full(ilm::solve_code(ilm::parse_code("A+,a-,A+"), prm).profile, prm);
  std::istringstream is(viafile.out);
  std::string line;
  std::getline(is, line);
  for (const auto& e : rep.eigenvalues) {
    ASSERT_TRUE(std::getline(is, line));
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    EXPECT_EQ(std::stod(line.substr(c1 + 1)), e.lambda.real());
    EXPECT_EQ(std::stod(line.substr(c2 + 1)), e.lambda.imag());
  }
  std::filesystem::remove(path);
}

TEST(Cli, ConfigFileAndDump) {
  const std::string cfg = temp_path("cfg.ini");
  {
    std::ofstream f(cfg);
    f << "roots.p=3\nroots.q=5\nroots.gamma=0.2\n";
  }
  const CliRun r = run({"--config", cfg, "roots"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(json_number(r.out, "A"), 1.902113, 1e-6);

  const CliRun d = run({"roots", "--gamma", "0.1", "--dump-config"});
  ASSERT_EQ(d.code, 0);
  EXPECT_NE(d.out.find("roots.gamma=0.1"), std::string::npos);
  EXPECT_NE(d.out.find("roots.p=3"), std::string::npos);
  EXPECT_NE(d.out.find("format=\"auto\""), std::string::npos);

  {
    std::ofstream f(cfg);
    f << "roots.nonsense=1\n";
  }
  EXPECT_EQ(run({"--config", cfg, "roots"}).code, 1);
  std::filesystem::remove(cfg);
}

TEST(Cli, SeriesOutputs) {
  const CliRun sw = run({"sweep", "--code", "A+,A+", "--points", "3"});
  ASSERT_EQ(sw.code, 0) << sw.err;
  EXPECT_EQ(sw.out.rfind("gamma,index,re,im,tag\n", 0), 0u);
  const CliRun ev = run({"evolve", "--code", "A+", "--t-max", "1", "--sample-every", "500"});
  ASSERT_EQ(ev.code, 0) << ev.err;
  EXPECT_EQ(ev.out.rfind("t,Q,H,deviation\n", 0), 0u);
  EXPECT_EQ(std::count(ev.out.begin(), ev.out.end(), '\n'), 4);
  const CliRun br = run({"branch", "--code", "A+", "--eps-max", "0.01"});
  ASSERT_EQ(br.code, 0) << br.err;
  EXPECT_NE(br.out.find("\"termination\": \"reached eps_max\""), std::string::npos);
}
