#include "boscribe/cli.hpp"

#include "corpus.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

namespace fs = std::filesystem;
using boscribe::run_cli;
using boscribe::testing::read_text;
using boscribe::testing::repo_path;

namespace
{

struct Invocation
{
  int code;
  std::string out;
  std::string err;
};

Invocation cli(std::vector<std::string> args)
{
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

/// A fresh scratch directory per test.
class Cli : public ::testing::Test
{
protected:
  void SetUp() override
  {
    dir_ = fs::temp_directory_path() /
           ("boscribe-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string &name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

const std::string voting = repo_path("corpus/voting.bos");

}  // namespace

TEST_F(Cli, CheckExitCodes)
{
  EXPECT_EQ(cli({"check", voting}).code, 0);
  const Invocation v003 = cli({"check", repo_path("corpus/mutations/v003.bos")});
  EXPECT_EQ(v003.code, 1);
  EXPECT_TRUE(v003.out.empty());
  EXPECT_EQ(std::count(v003.err.begin(), v003.err.end(), '\n'), 1);
  EXPECT_NE(v003.err.find("error[V003]"), std::string::npos);
  EXPECT_EQ(cli({"check", path("missing.bos")}).code, 2);
  EXPECT_EQ(cli({"check", repo_path("corpus/mutations/w001.bos")}).code, 0);
}

TEST_F(Cli, RulesAndExplain)
{
  const Invocation rules = cli({"check", "--rules"});
  EXPECT_EQ(rules.code, 0);
  EXPECT_EQ(rules.out.rfind("code\tseverity\tdescription\n", 0), 0u);
  EXPECT_EQ(cli({"check", "--explain", "V008"}).code, 0);
  EXPECT_EQ(cli({"check", "--explain", "X1"}).code, 2);
}

TEST_F(Cli, UsageErrors)
{
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"bogus"}).code, 2);
  EXPECT_EQ(cli({"--help"}).code, 0);
  EXPECT_EQ(cli({"diagram", voting, "--kind", "sequence"}).code, 2);
  EXPECT_EQ(cli({"diagram", voting, "--kind", "pie"}).code, 2);
  EXPECT_EQ(cli({"diagram", voting, "--kind", "statechart", "--target", "Nope"}).code, 2);
}

TEST_F(Cli, DiagramToStdoutAndFile)
{
  const Invocation dot = cli({"diagram", voting, "--kind", "class"});
  EXPECT_EQ(dot.code, 0);
  EXPECT_NE(dot.out.find("digraph model {"), std::string::npos);
  const Invocation file = cli({"diagram", voting, "--kind", "sequence", "--target", "happyPath", "-o", path("hp.mmd")});
  EXPECT_EQ(file.code, 0);
  EXPECT_TRUE(file.out.empty());
  EXPECT_EQ(read_text(path("hp.mmd")).rfind("sequenceDiagram", 0), 0u);
}

TEST_F(Cli, InvalidModelsBlockEmission)
{
  const std::string bad = repo_path("corpus/mutations/v010.bos");
  EXPECT_EQ(cli({"diagram", bad, "--kind", "class"}).code, 1);
  EXPECT_EQ(cli({"codegen", bad, "--out-dir", path("gen")}).code, 1);
  EXPECT_FALSE(fs::exists(path("gen")));
  EXPECT_EQ(cli({"simulate", bad}).code, 1);
}

TEST_F(Cli, CodegenListsFiles)
{
  const Invocation r = cli({"codegen", voting, "--out-dir", path("gen")});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char *f : {"Ownable.sol", "VotingManagement.sol", "Ownable.abi.json", "VotingManagement.abi.json"}) {
    EXPECT_TRUE(fs::exists(path(std::string("gen/") + f))) << f;
    EXPECT_NE(r.out.find(f), std::string::npos);
  }
}

TEST_F(Cli, CodegenInterfaceOnly)
{
  std::ofstream(path("i.bos")) << "system I {\n    interface Feed {\n        function price() view returns (uint256);\n    }\n}\n";
  const Invocation r = cli({"codegen", path("i.bos"), "--out-dir", path("gen")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(read_text(path("gen/Feed.sol")).find("interface Feed {"), std::string::npos);
}

TEST_F(Cli, CodegenUnwritableDir)
{
  std::ofstream(path("blocker")) << "x";
  EXPECT_EQ(cli({"codegen", voting, "--out-dir", path("blocker/sub")}).code, 2);
}

TEST_F(Cli, Simulate)
{
  EXPECT_EQ(cli({"simulate", voting, "--scenario", "happyPath"}).code, 0);
  EXPECT_EQ(cli({"simulate", voting, "--scenario", "registeredCannotDelegate"}).code, 0);
  EXPECT_EQ(cli({"simulate", voting, "--scenario", "nope"}).code, 2);
  const Invocation all = cli({"simulate", voting, "--report", "json"});
  EXPECT_EQ(all.code, 0);
  EXPECT_EQ(all.out.front(), '[');
  EXPECT_EQ(cli({"simulate", voting, "--report", "xml"}).code, 2);
}

TEST_F(Cli, SimulateMismatchExitsOne)
{
  std::string text = read_text(voting);
  const std::string from = "call bob -> vm.delegate(alice) at 120 => revert assemblyNotStarted;";
  text.replace(text.find(from), from.size(), "call bob -> vm.delegate(alice) at 120 => ok;");
  std::ofstream(path("m.bos")) << text;
  const Invocation r = cli({"simulate", path("m.bos"), "--scenario", "delegateAfterStart"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("FAIL"), std::string::npos);
}

TEST_F(Cli, InitScaffoldsAndStarterChecks)
{
  const std::string root = path("myDapp");
  const Invocation r = cli({"init", "myDapp", "--dir", root});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 6);
  for (const char *f : {"goal.md", "actors.md", "stories/story-template.md", "onchain/model.bos", "offchain/README.md",
                        "process-checklist.md"})
    EXPECT_TRUE(fs::exists(root + "/" + f)) << f;
  EXPECT_NE(read_text(root + "/stories/story-template.md").find("Subsystem:"), std::string::npos);
  const Invocation check = cli({"check", root + "/onchain/model.bos"});
  EXPECT_EQ(check.code, 0);
  EXPECT_TRUE(check.err.empty()) << check.err;
  EXPECT_EQ(cli({"simulate", root + "/onchain/model.bos"}).code, 0);
}

TEST_F(Cli, InitRefusesNonEmptyDir)
{
  fs::create_directories(path("taken"));
  std::ofstream(path("taken/keep.txt")) << "x";
  EXPECT_EQ(cli({"init", "taken", "--dir", path("taken")}).code, 2);
  EXPECT_FALSE(fs::exists(path("taken/goal.md")));
}

TEST_F(Cli, FmtIsIdempotent)
{
  const Invocation once = cli({"fmt", voting});
  ASSERT_EQ(once.code, 0);
  std::ofstream(path("f.bos")) << once.out;
  const Invocation twice = cli({"fmt", path("f.bos")});
  EXPECT_EQ(twice.out, once.out);
  EXPECT_EQ(cli({"fmt", path("f.bos"), "--write"}).code, 0);
  EXPECT_EQ(read_text(path("f.bos")), once.out);
}

TEST_F(Cli, FmtRejectsBrokenInput)
{
  std::ofstream(path("b.bos")) << "system S { contract }";
  const Invocation r = cli({"fmt", path("b.bos")});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(r.err.empty());
}

TEST_F(Cli, BinaryHonorsNoColor)
{
  const std::string cmd = std::string("BOSCRIBE_NO_COLOR=1 ") + BOSCRIBE_BINARY + " check " +
                          repo_path("corpus/mutations/v004.bos") + " 2> " + path("err.txt");
  const int status = std::system(cmd.c_str());
  EXPECT_EQ(WEXITSTATUS(status), 1);
  const std::string err = read_text(path("err.txt"));
  EXPECT_NE(err.find("error[V004]"), std::string::npos);
  EXPECT_EQ(err.find('\x1b'), std::string::npos);
}
