#include <gtest/gtest.h>

#include <set>

#include "qsr/error.hpp"
#include "qsr/point_relation.hpp"
#include "qsr/relations.hpp"

using namespace qsr;

namespace {

// Concrete intervals with integer endpoints in [0, 7).
std::vector<Interval> small_intervals() {
  std::vector<Interval> out;
  for (int a = 0; a < 7; ++a) {
    for (int b = a + 1; b < 7; ++b) out.push_back(Interval::make(a, b));
  }
  return out;
}

// Composition oracle: witness search over concrete intervals.
std::set<std::uint32_t> compose_oracle(std::uint32_t r, std::uint32_t s) {
  std::set<std::uint32_t> out;
  const auto iv = small_intervals();
  for (const auto& a : iv) {
    for (const auto& b : iv) {
      if (!holds({Structure::ia(), r}, a, b)) continue;
      for (const auto& c : iv) {
        if (holds({Structure::ia(), s}, b, c)) out.insert(classify_pair(Structure::ia(), a, c)->code);
      }
    }
  }
  return out;
}

}  // namespace

TEST(Relations, EveryIntervalPairHasExactlyOneBasic) {
  const auto iv = small_intervals();
  for (const auto& a : iv) {
    for (const auto& b : iv) {
      int n = 0;
      for (std::uint32_t c = 0; c < ia::kCount; ++c) n += holds({Structure::ia(), c}, a, b);
      EXPECT_EQ(n, 1);
    }
  }
}

TEST(Relations, TableRowsForStartsAndMeets) {
  const auto s = Interval::make(0, 1), t = Interval::make(0, 2);
  EXPECT_TRUE(holds(parse_basic(Structure::ia(), "s"), s, t));
  EXPECT_TRUE(holds(parse_basic(Structure::ia(), "m"), Interval::make(0, 1), Interval::make(1, 3)));
  EXPECT_TRUE(holds(parse_basic(Structure::ia(), "pi"), Interval::make(4, 5), Interval::make(0, 1)));
}

TEST(Relations, IaCompositionMatchesConcreteOracle) {
  for (std::uint32_t r = 0; r < ia::kCount; ++r) {
    for (std::uint32_t s = 0; s < ia::kCount; ++s) {
      const auto got = compose(QualitativeRelation::single({Structure::ia(), r}),
                               QualitativeRelation::single({Structure::ia(), s}))
                           .codes();
      const auto want = compose_oracle(r, s);
      EXPECT_EQ(std::set<std::uint32_t>(got.begin(), got.end()), want) << r << " " << s;
    }
  }
}

TEST(Relations, ComposeExamples) {
  const auto IA = Structure::ia();
  EXPECT_EQ(compose(parse_relation(IA, "{ s }"), parse_relation(IA, "{ s }")),
            parse_relation(IA, "{ s }"));
  EXPECT_EQ(compose(parse_relation(IA, "{ m }"), parse_relation(IA, "{ m }")),
            parse_relation(IA, "{ p }"));
}

TEST(Relations, ConverseIsInvolution) {
  const auto IA = Structure::ia();
  for (std::uint32_t c = 0; c < ia::kCount; ++c) {
    EXPECT_EQ(converse(converse(BasicCode{IA, c})).code, c);
  }
  EXPECT_EQ(converse(parse_relation(IA, "{ s d }")), parse_relation(IA, "{ si di }"));
  EXPECT_EQ(converse(parse_basic(Structure::cdc(), "NE")).name(), "SW");
  EXPECT_EQ(converse(parse_basic(Structure::ra(), "(s,p)")).name(), "(si,pi)");
  EXPECT_THROW(converse(parse_basic(Structure::dia(), "cb=")), DefinitionMissing);
}

TEST(Relations, EndpointReadingSizes) {
  EXPECT_EQ(relation_of(QualitativeRelation::full(Structure::ia())).size(), 13u);
  EXPECT_EQ(relation_of(QualitativeRelation::full(Structure::ra())).size(), 169u);
  EXPECT_EQ(relation_of(QualitativeRelation::full(Structure::cdc())).size(), 8u);
  EXPECT_EQ(relation_of(parse_relation(Structure::ia(), "{ p m }")).size(), 2u);
}

TEST(Relations, BlockWildcardExpandsOneAxis) {
  const auto r = parse_relation(Structure::ra(), "(s,*)");
  EXPECT_EQ(r.size(), 13u);
  EXPECT_TRUE(r.is_product());
  EXPECT_EQ(r.projections()[0], parse_relation(Structure::ia(), "s"));
}

TEST(Relations, CdcAndDiaSemantics) {
  const PlanePoint a{0, 1}, b{0, 0};
  EXPECT_EQ(classify_pair(Structure::cdc(), a, b)->name(), "N");
  EXPECT_FALSE(classify_pair(Structure::cdc(), a, a).has_value());
  const auto x = DirectedInterval::make(0, 1), y = DirectedInterval::make(0, 2);
  EXPECT_EQ(classify_pair(Structure::dia(), x, y)->name(), "cb=");
  const auto xb = DirectedInterval::make(1, 0), yb = DirectedInterval::make(2, 0);
  EXPECT_EQ(classify_pair(Structure::dia(), xb, yb)->name(), "cb=");
  EXPECT_EQ(classify_pair(Structure::dia(), x, DirectedInterval::make(1, 0))->name(), "Eq!=");
}

TEST(Relations, ParseRejectsUnknownCodes) {
  EXPECT_THROW(parse_relation(Structure::ia(), "{ s q }"), Error);
  EXPECT_THROW(parse_basic(Structure::ra(), "(s)"), Error);
}
