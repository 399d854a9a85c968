#include "boscribe/model.hpp"
#include "boscribe/parser.hpp"

#include <gtest/gtest.h>

using namespace boscribe;

namespace
{

ExprRef expr_of(const std::string &text)
{
  std::vector<Diagnostic> diags;
  ExprRef e = parse_expression(SourceFile{"expr", text}, diags);
  EXPECT_TRUE(diags.empty()) << text;
  return e;
}

}  // namespace

TEST(ScalarTypes, ParsesWidthsAndAliases)
{
  EXPECT_EQ(parse_scalar_type("uint16"), (ScalarType{ScalarKind::uint_, 16}));
  EXPECT_EQ(parse_scalar_type("uint"), (ScalarType{ScalarKind::uint_, 256}));
  EXPECT_EQ(parse_scalar_type("int8"), (ScalarType{ScalarKind::int_, 8}));
  EXPECT_EQ(parse_scalar_type("address"), (ScalarType{ScalarKind::address, 0}));
  EXPECT_FALSE(parse_scalar_type("uint7"));
  EXPECT_FALSE(parse_scalar_type("uint264"));
  EXPECT_FALSE(parse_scalar_type("uint08"));
  EXPECT_FALSE(parse_scalar_type("float"));
}

TEST(TypeRefs, CanonicalSpelling)
{
  EXPECT_EQ(to_string(TypeRef::make_scalar(ScalarKind::uint_, 16)), "uint16");
  EXPECT_EQ(to_string(TypeRef::make_array(TypeRef::make_user("Shareholder"))), "Shareholder[]");
  EXPECT_EQ(to_string(TypeRef::make_map(ScalarType{ScalarKind::uint_, 256}, TypeRef::make_user("Voting"))),
            "mapping(uint256 => Voting)");
}

TEST(Expressions, PrintingKeepsOnlyNeededParentheses)
{
  EXPECT_EQ(to_string(expr_of("(a && b) || c")), "a && b || c");
  EXPECT_EQ(to_string(expr_of("a && (b || c)")), "a && (b || c)");
  EXPECT_EQ(to_string(expr_of("a - (b - c) < 3")), "a - (b - c) < 3");
  EXPECT_EQ(to_string(expr_of("!(x == y)")), "!(x == y)");
  EXPECT_EQ(to_string(expr_of("sender in shareholders")), "sender in shareholders");
  EXPECT_EQ(to_string(expr_of("instate(to, Registered) && attr(to, proxies) < maxProxies")),
            "instate(to, Registered) && attr(to, proxies) < maxProxies");
}

TEST(Expressions, EqualityIgnoresLocations)
{
  const ExprRef a = expr_of("a   <   1");
  const ExprRef b = expr_of("a < 1");
  EXPECT_EQ(a, b);
  EXPECT_NE(a, expr_of("a < 2"));
}

TEST(Strings, QuoteEscapes)
{
  EXPECT_EQ(quote_string("a\"b\\c\nd\te"), R"("a\"b\\c\nd\te")");
}

TEST(Outcomes, Spelling)
{
  EXPECT_EQ(to_string(Outcome::ok()), "ok");
  EXPECT_EQ(to_string(Outcome::revert("onlyOwner")), "revert onlyOwner");
  EXPECT_EQ(to_string(Outcome::error("overflow")), "error overflow");
}

TEST(Literals, Spelling)
{
  const Literal list{Literal::List{false, {Literal{Int(1)}, Literal{std::string("x")}, Literal{true}}}};
  EXPECT_EQ(to_string(list), R"([1, "x", true])");
  EXPECT_EQ(to_string(Literal{Literal::Address{"alice"}}), "alice");
}

TEST(Contracts, ConstructorLookup)
{
  ContractDef c;
  EXPECT_EQ(c.constructor(), nullptr);
  FunctionDef ctor;
  ctor.name = "constructor";
  ctor.is_constructor = true;
  c.functions.push_back(ctor);
  ASSERT_NE(c.constructor(), nullptr);
  EXPECT_TRUE(c.constructor()->is_constructor);
}
