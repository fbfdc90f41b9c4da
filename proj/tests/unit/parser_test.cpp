#include <gtest/gtest.h>

#include "chainlab/errors.hpp"
#include "chainlab/normal_form.hpp"
#include "chainlab/parser.hpp"
#include "corpus.hpp"

namespace chainlab {
namespace {

Assumptions positivity(const Expr& a, const Expr& b) {
  Assumptions out = radicandAssumptions(a);
  const Assumptions fromB = radicandAssumptions(b);
  for (const auto& base : fromB.positive()) out.assumePositive(base);
  return out;
}

TEST(Parser, Examples) {
  EXPECT_EQ(parseExpression("1"), Expr(1));
  const Expr x(Var::x());
  EXPECT_TRUE(equivalent(parseExpression("x^2 + 2*x - 2"), x * x + 2 * x - 2));
  try {
    parseExpression("2*^x");
    FAIL() << "expected a syntax error";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.offset(), 2u);
    EXPECT_FALSE(e.expected().empty());
  }
}

TEST(Parser, GoldenValid) {
  for (const auto& c : testing::validGrammarCases()) {
    SCOPED_TRACE(c.source);
    const Expr parsed = parseExpression(c.source);
    const Expr reference = parseExpression(c.reference);
    EXPECT_TRUE(equivalent(parsed, reference, positivity(parsed, reference))) << toText(parsed) << " vs " << c.reference;
  }
}

TEST(Parser, GoldenInvalid) {
  for (const auto& c : testing::invalidGrammarCases()) {
    SCOPED_TRACE(c.source);
    try {
      parseExpression(c.source);
      ADD_FAILURE() << "accepted";
    } catch (const SyntaxError& e) {
      EXPECT_EQ(e.offset(), c.offset) << e.what();
    }
  }
}

TEST(Parser, CorpusSize) {
  EXPECT_EQ(testing::validGrammarCases().size() + testing::invalidGrammarCases().size(), 105u);
}

TEST(Parser, Precedence) {
  EXPECT_EQ(parseExpression("-2^2"), Expr(-4));
  EXPECT_EQ(parseExpression("2^3^2"), Expr(512));
  EXPECT_EQ(parseExpression("8/4/2"), Expr(1));
  EXPECT_EQ(parseExpression("8-4-2"), Expr(2));
}

TEST(Parser, RoundTripOnGeneratedExpressions) {
  testing::ExprGenerator gen(20261017);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    Expr e;
    try {
      e = gen.next();
    } catch (const DomainError&) {
      e = Expr(Var::x());
    }
    const std::string text = toText(e);
    ASSERT_EQ(parseExpression(text), e) << text;
    ++checked;
  }
  EXPECT_EQ(checked, 1000);
}

}  // namespace
}  // namespace chainlab
