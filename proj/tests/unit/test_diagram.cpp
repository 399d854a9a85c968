#include "boscribe/diagram.hpp"

#include "checkers.hpp"
#include "corpus.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>

using namespace boscribe;
using namespace boscribe::testing;

namespace
{

const ResolvedModel &voting()
{
  static const CheckResult r = check_file("corpus/voting.bos");
  return r.resolved;
}

const ResolvedModel &escrow()
{
  static const CheckResult r = check_file("corpus/escrow.bos");
  return r.resolved;
}

bool contains(const std::string &hay, const std::string &needle) { return hay.find(needle) != std::string::npos; }

/// Compares against tests/golden/<name>; BOSCRIBE_UPDATE_GOLDEN=1 rewrites it.
void expect_golden(const std::string &name, const std::string &actual)
{
  const std::string path = repo_path("tests/golden/" + name);
  if (const char *u = std::getenv("BOSCRIBE_UPDATE_GOLDEN"); u && std::string(u) == "1") {
    std::ofstream(path, std::ios::binary) << actual;
    return;
  }
  EXPECT_EQ(read_text(path), actual) << name;
}

}  // namespace

TEST(ClassDiagram, Stereotypes)
{
  const std::string dot = emit_class_dot(voting());
  EXPECT_TRUE(contains(dot, "«contract»\\nOwnable\\n\\{abstract\\}"));
  EXPECT_TRUE(contains(dot, "+ «role» shareholders : address set"));
  EXPECT_TRUE(contains(dot, "«modifier» onlyOwner()"));
  EXPECT_TRUE(contains(dot, "+ verifyValidity() : bool «view» [onlyOwnerOrShareholder]"));
  EXPECT_TRUE(contains(dot, "«event» VoteCast("));
  EXPECT_TRUE(contains(dot, "\"VotingManagement\" -> \"Ownable\" [arrowhead=empty]"));
  EXPECT_TRUE(contains(dot, "label=\"«map[uint]»\""));
  EXPECT_TRUE(contains(dot, "label=\"«array»\""));
}

TEST(ClassDiagram, OptionsToggleCompartments)
{
  EXPECT_FALSE(contains(emit_class_dot(voting(), DiagramOptions{false, false}), "«event»"));
  EXPECT_TRUE(contains(emit_class_dot(voting(), DiagramOptions{true, true}), "writes"));
}

TEST(ClassDiagram, EmptyModel)
{
  EXPECT_TRUE(contains(emit_class_dot(ResolvedModel{}), "digraph model {}"));
}

TEST(Statechart, InitialPseudoStateAndLabels)
{
  const std::string dot = emit_statechart_dot(voting(), "ShareholderParticipation");
  EXPECT_TRUE(contains(dot, "\"__initial\" -> \"Idle\";"));
  EXPECT_TRUE(contains(dot, "delegate [instate(to, Registered) && attr(to, proxies) < maxProxies] / to.proxies += 1"));
  EXPECT_THROW(emit_statechart_dot(voting(), "Nope"), Error);
}

TEST(Sequence, ParticipantsAndArrows)
{
  const std::string mmd = emit_sequence_mermaid(voting(), "happyPath");
  EXPECT_EQ(mmd.rfind("sequenceDiagram\n", 0), 0u);
  const auto decl = mmd.find("participant vm as «contract» vm");
  const auto create = mmd.find("admin->>vm: «create» VotingManagement");
  ASSERT_NE(decl, std::string::npos);
  ASSERT_NE(create, std::string::npos);
  EXPECT_LT(decl, create);
  EXPECT_LT(mmd.find("participant bob"), decl);
  EXPECT_TRUE(contains(mmd, "«view» readResults"));
  EXPECT_THROW(emit_sequence_mermaid(voting(), "nope"), Error);
}

TEST(Sequence, EtherAndReverts)
{
  const std::string mmd = emit_sequence_mermaid(escrow(), "escrowHappyPath");
  EXPECT_TRUE(contains(mmd, "buyer--)esc: ETH 100"));
  EXPECT_TRUE(contains(mmd, "revert onlyBuyer"));
  EXPECT_TRUE(contains(mmd, "[value 1000 wei]"));
}

TEST(Diagrams, DeterministicAcrossRuns)
{
  EXPECT_EQ(emit_class_dot(voting()), emit_class_dot(voting()));
  EXPECT_EQ(emit_sequence_mermaid(voting(), "maxProxies"), emit_sequence_mermaid(voting(), "maxProxies"));
}

TEST(Diagrams, GoldenFiles)
{
  expect_golden("voting.class.dot", emit_class_dot(voting()));
  expect_golden("voting.ShareholderParticipation.dot", emit_statechart_dot(voting(), "ShareholderParticipation"));
  expect_golden("voting.happyPath.mmd", emit_sequence_mermaid(voting(), "happyPath"));
  expect_golden("escrow.class.dot", emit_class_dot(escrow()));
  expect_golden("escrow.escrowHappyPath.mmd", emit_sequence_mermaid(escrow(), "escrowHappyPath"));
}

TEST(DotChecker, AcceptsEmittedAndRejectsBroken)
{
  EXPECT_TRUE(check_dot(emit_class_dot(voting())).empty());
  EXPECT_TRUE(check_dot(emit_class_dot(escrow())).empty());
  EXPECT_TRUE(check_dot(emit_statechart_dot(voting(), "ShareholderParticipation")).empty());
  EXPECT_FALSE(check_dot("digraph g { a -> b; ").empty());
  EXPECT_FALSE(check_dot("digraph g { a; a -> b; }").empty());
  EXPECT_FALSE(check_dot("digraph g { node [shape=record]; a [label=\"{x|y\"]; }").empty());
  EXPECT_FALSE(check_dot("digraph g { a [label=]; }").empty());
  EXPECT_TRUE(check_dot("digraph g { node [shape=record]; a [label=\"{x\\{|y}\"]; }").empty());
}
