#include "boscribe/parser.hpp"

#include "corpus.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace boscribe;
using boscribe::testing::read_text;
using boscribe::testing::repo_path;

namespace
{

ParseResult parse_text(const std::string &text) { return parse(SourceFile{"t.bos", text}); }

const char *corpus_files[] = {"corpus/voting.bos", "corpus/escrow.bos"};

}  // namespace

TEST(Parser, CorpusParsesClean)
{
  for (const char *f : corpus_files) {
    const ParseResult r = parse(SourceFile{f, read_text(repo_path(f))});
    EXPECT_TRUE(r.ok()) << f;
  }
}

TEST(Parser, VotingDeclarationOrder)
{
  const Model m = parse(SourceFile{"v", read_text(repo_path("corpus/voting.bos"))}).model;
  EXPECT_EQ(m.name, "CorporateVoting");
  ASSERT_EQ(m.contracts.size(), 2u);
  EXPECT_EQ(m.contracts[0].name, "Ownable");
  EXPECT_EQ(m.contracts[0].kind, ContractKind::abstract);
  EXPECT_EQ(m.contracts[1].inherits, std::vector<std::string>{"Ownable"});
  EXPECT_EQ(m.contracts[1].functions.size(), 13u);
  EXPECT_EQ(m.actors.size(), 2u);
  EXPECT_EQ(m.statecharts.size(), 1u);
  EXPECT_EQ(m.scenarios.size(), 4u);
  EXPECT_EQ(m.stories.size(), 7u);
}

TEST(Parser, RoundTripIsIdentity)
{
  for (const char *f : corpus_files) {
    const Model m = parse(SourceFile{f, read_text(repo_path(f))}).model;
    const std::string printed = print(m);
    const ParseResult again = parse_text(printed);
    ASSERT_TRUE(again.ok()) << f;
    EXPECT_EQ(again.model, m) << f;
    EXPECT_EQ(print(again.model), printed) << f;
  }
}

TEST(Parser, ErrorCarriesSpan)
{
  const ParseResult r = parse_text("system S {\n    contract C {\n        public uint16 ;\n    }\n}\n");
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.diagnostics.front().span.begin.line, 3u);
  EXPECT_EQ(r.diagnostics.front().severity, Severity::error);
}

TEST(Parser, RecoversAtDeclarationBoundaries)
{
  const ParseResult r = parse_text(
      "system S {\n"
      "    contract A { public uint16 ; }\n"
      "    contract B { public bool flag; }\n"
      "    actor X : robot;\n"
      "    actor Y : person;\n"
      "}\n");
  EXPECT_GE(r.diagnostics.size(), 2u);
  EXPECT_NE(r.model.contract("B"), nullptr);
  EXPECT_NE(r.model.actor("Y"), nullptr);
}

TEST(Parser, UnterminatedStringIsReported)
{
  const ParseResult r = parse_text("system S {\n    goal \"never closed\n}\n");
  EXPECT_FALSE(r.ok());
}

TEST(Parser, ExpressionPrecedence)
{
  std::vector<Diagnostic> d;
  const ExprRef e = parse_expression(SourceFile{"e", "a || b && c"}, d);
  ASSERT_TRUE(d.empty());
  const auto *top = std::get_if<expr::Binary>(&e->node);
  ASSERT_NE(top, nullptr);
  EXPECT_EQ(top->op, BinaryOp::logical_or);
}

TEST(Parser, PrintIsCanonical)
{
  const ParseResult r = parse_text("system   S{contract C{public   uint16 x;}}");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(print(r.model), "system S {\n    contract C {\n        public uint16 x;\n    }\n}\n");
}

// Random edits of the corpus must never crash the parser, and whatever it
// reports must point inside the input.
TEST(Parser, FuzzedInputsAreHandled)
{
  const std::string base = read_text(repo_path("corpus/voting.bos"));
  std::mt19937_64 rng(7);
  const std::string alphabet = "{}();,=<>!&|.\"abcXYZ019 \n";
  for (int round = 0; round < 300; ++round) {
    std::string text = base;
    const int edits = 1 + static_cast<int>(rng() % 6);
    for (int k = 0; k < edits; ++k) {
      const std::size_t at = rng() % text.size();
      switch (rng() % 3) {
        case 0: text.erase(at, 1 + rng() % 8); break;
        case 1: text.insert(at, 1, alphabet[rng() % alphabet.size()]); break;
        default: text[at] = alphabet[rng() % alphabet.size()]; break;
      }
    }
    const ParseResult r = parse_text(text);
    const std::size_t lines = static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) + 2;
    for (const auto &d : r.diagnostics) {
      EXPECT_GE(d.span.begin.line, 1u);
      EXPECT_LE(d.span.begin.line, lines);
    }
    if (r.ok()) {
      const ParseResult again = parse_text(print(r.model));
      EXPECT_TRUE(again.ok());
      EXPECT_EQ(again.model, r.model);
    }
  }
}
