#include <gtest/gtest.h>

#include <random>

#include "qsr/definability.hpp"
#include "qsr/error.hpp"
#include "qsr/kernels.hpp"
#include "qsr/ordhorn_solver.hpp"

using namespace qsr;

namespace {

ClauseSet clauses(const char* text) { return parse_clauses(text); }

// All ORD-Horn clauses over k single-sort variables.
std::vector<ORDClause> all_ord_clauses(int k) {
  std::vector<VarPair> pairs;
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) pairs.push_back({a, b});
  }
  std::vector<std::optional<Literal>> heads{std::nullopt};
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      if (a == b) continue;
      heads.push_back(Literal{a, OrderOp::Lt, b});
      heads.push_back(Literal{a, OrderOp::Le, b});
      if (a < b) heads.push_back(Literal{a, OrderOp::Eq, b});
    }
  }
  std::vector<ORDClause> out;
  for (std::uint32_t mask = 0; mask < (1U << pairs.size()); ++mask) {
    std::vector<VarPair> neq;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (mask & (1U << i)) neq.push_back(pairs[i]);
    }
    for (const auto& h : heads) out.push_back({neq, h});
  }
  return out;
}

// All ll-Horn clauses over k single-sort variables.
std::vector<LLClause> all_ll_clauses(int k) {
  std::vector<VarPair> pairs;
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) pairs.push_back({a, b});
  }
  std::vector<LLClause> out;
  for (std::uint32_t mask = 0; mask < (1U << pairs.size()); ++mask) {
    std::vector<VarPair> ante;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (mask & (1U << i)) ante.push_back(pairs[i]);
    }
    for (int z0 = 0; z0 < k; ++z0) {
      for (std::uint32_t t = 0; t < (1U << k); ++t) {
        if (t & (1U << z0)) continue;
        std::vector<int> tail;
        for (int z = 0; z < k; ++z) {
          if (t & (1U << z)) tail.push_back(z);
        }
        for (bool alleq : {false, true}) out.push_back({ante, z0, tail, alleq, false});
      }
    }
  }
  return out;
}

// Closure oracle: R is definable iff the clauses true on R cut out exactly R.
template <class C>
bool closure_definable(const PointRelation& R, const std::vector<C>& all) {
  auto orders = enumerate_weak_orders(R.arity());
  std::vector<char> alive(orders.size(), 1);
  for (const auto& c : all) {
    bool valid = true;
    for (const auto& m : R.models()) valid = valid && c.holds(m);
    if (!valid) continue;
    for (std::size_t i = 0; i < orders.size(); ++i) alive[i] = alive[i] && c.holds(orders[i]);
  }
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (static_cast<bool>(alive[i]) != R.contains(orders[i])) return false;
  }
  return true;
}

PointRelation random_relation(std::mt19937_64& rng, int k) {
  const auto all = enumerate_weak_orders(k);
  std::bernoulli_distribution coin(0.5);
  std::vector<WeakOrder> pick;
  if (coin(rng)) {
    // Models of a few random ORD-Horn or ll-Horn clauses.
    static const auto ords = all_ord_clauses(4);
    static const auto lls = all_ll_clauses(4);
    std::uniform_int_distribution<std::size_t> a(0, ords.size() - 1), b(0, lls.size() - 1);
    std::vector<Clause> cs;
    for (int i = 0; i < 2; ++i) cs.push_back(coin(rng) ? Clause(ords[a(rng)]) : Clause(lls[b(rng)]));
    for (const auto& w : all) {
      if (clause_holds(cs[0], w) && clause_holds(cs[1], w)) pick.push_back(w);
    }
  } else {
    std::bernoulli_distribution keep(0.85);
    for (const auto& w : all) {
      if (keep(rng)) pick.push_back(w);
    }
  }
  return PointRelation(k, std::vector<int>(k, 0), pick);
}

}  // namespace

TEST(Clauses, ClassMembership) {
  EXPECT_TRUE(is_ll_horn(clauses("x = y -> z1 < z0 \\/ z2 < z0")));
  EXPECT_FALSE(is_ll_horn(clauses("z1 < z2 \\/ z3 < z4")));
  EXPECT_TRUE(is_ll_horn(ClauseSet{}));
  EXPECT_TRUE(is_ord_horn(clauses("x != y \\/ u = v")));
  EXPECT_FALSE(is_ord_horn(clauses("-> z1 < z0 \\/ z2 < z0")));
  EXPECT_TRUE(is_ord_horn(clauses("x <= y")));
  EXPECT_TRUE(is_ll_horn(clauses("x != y \\/ u = v")));
  EXPECT_TRUE(is_dual_ll_horn(clauses("x != y \\/ u = v")));
  EXPECT_FALSE(is_ll_horn(clauses("-> z0 < z1 \\/ z0 < z2")));
  EXPECT_TRUE(is_dual_ll_horn(clauses("-> z0 < z1 \\/ z0 < z2")));
}

TEST(Clauses, RoundTripText) {
  for (const char* t : {"x != y \\/ u = v", "x = y -> z1 < z0 \\/ z2 < z0 [alleq]",
                        "-> a < c \\/ b < c", "a <= b", "x != y", "p < q \\/ r < s"}) {
    auto cs = clauses(t);
    ASSERT_EQ(cs.clauses.size(), 1u);
    auto again = cs;
    again.clauses = {parse_clause(to_string(cs.clauses[0], cs.variables), again)};
    EXPECT_EQ(again.clauses[0], cs.clauses[0]) << t;
    EXPECT_EQ(models_of(again), models_of(cs)) << t;
  }
}

TEST(Clauses, ParseErrorsCarryLines) {
  try {
    parse_clauses("x < y\nx ?? y\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
}

TEST(Clauses, ModelCounts) {
  EXPECT_EQ(models_of(clauses("x < y")).size(), 1u);
  ClauseSet three;
  for (const char* v : {"a", "b", "c"}) three.variable(v);
  EXPECT_EQ(models_of(three).size(), 13u);
  // x = y leaves 13 orders of {xy, u, v}; 3 of them also have u = v.
  EXPECT_EQ(models_of(clauses("x != y \\/ u = v")).size(), 75u - (13u - 3u));
}

TEST(Definability, ImplicationIsOrdHorn) {
  const auto R = models_of(clauses("x != y \\/ u = v"));
  const auto d = ordhorn_definable(R);
  ASSERT_TRUE(d.definable());
  EXPECT_EQ(models_of(*d.definition), R);
  EXPECT_TRUE(is_ord_horn(*d.definition));
  EXPECT_TRUE(llhorn_definable(R).definable());
  EXPECT_TRUE(dual_llhorn_definable(R).definable());
}

TEST(Definability, SingleOrderIsOrdHorn) {
  const std::vector<WeakOrder> one{WeakOrder::from_ranks({0, 2, 1, 1})};
  EXPECT_TRUE(ordhorn_definable(PointRelation(4, {0, 0, 0, 0}, one)).definable());
}

TEST(Definability, DisjointStrictPairIsNotLlHorn) {
  const auto cs = clauses("z1 < z2 \\/ z3 < z4");
  EXPECT_FALSE(is_ll_horn(cs));
  const auto R = models_of(cs);
  const auto ll = llhorn_definable(R);
  EXPECT_FALSE(ll.definable());
  ASSERT_TRUE(ll.witness.has_value());
  EXPECT_FALSE(R.contains(*ll.witness));
  EXPECT_FALSE(ordhorn_definable(R).definable());
  EXPECT_FALSE(closure_definable(R, all_ll_clauses(4)));
}

TEST(Definability, LlSequentIsLlButNotOrd) {
  const auto R = models_of(clauses("-> z1 < z0 \\/ z2 < z0"));
  EXPECT_TRUE(llhorn_definable(R).definable());
  EXPECT_FALSE(ordhorn_definable(R).definable());
  EXPECT_FALSE(closure_definable(R, all_ord_clauses(3)));
}

TEST(Definability, FullRelationNeedsNoClauses) {
  const auto R = PointRelation::full(3);
  const auto d = llhorn_definable(R);
  ASSERT_TRUE(d.definable());
  EXPECT_TRUE(d.definition->clauses.empty());
}

TEST(Definability, AgreesWithExhaustiveClauseSearch) {
  std::mt19937_64 rng(11);
  const auto ords = all_ord_clauses(4);
  const auto lls = all_ll_clauses(4);
  int ord_yes = 0;
  for (int t = 0; t < 40; ++t) {
    const auto R = random_relation(rng, 4);
    const bool ord = ordhorn_definable(R).definable();
    EXPECT_EQ(ord, closure_definable(R, ords));
    EXPECT_EQ(llhorn_definable(R).definable(), closure_definable(R, lls));
    if (ord) {
      ++ord_yes;
      EXPECT_TRUE(llhorn_definable(R).definable());
      EXPECT_TRUE(dual_llhorn_definable(R).definable());
    }
  }
  EXPECT_GT(ord_yes, 0);
}

TEST(Definability, SerialAndParallelSeparationAgree) {
  const auto R = models_of(clauses("x = y -> a < b \\/ c < b"));
  std::vector<WeakOrder> excluded;
  for (const auto& w : enumerate_weak_orders(R.arity())) {
    if (!R.contains(w)) excluded.push_back(w);
  }
  for (auto cls : {HornClass::OrdHorn, HornClass::LLHorn, HornClass::DualLLHorn}) {
    EXPECT_EQ(kernels::separation_serial(R, excluded, cls), kernels::separation_omp(R, excluded, cls));
  }
}

TEST(Minimize, RemovesDuplicates) {
  auto cs = clauses("x < y\nx < y\n");
  const auto m = minimize(cs, models_of(cs));
  EXPECT_EQ(m.clauses.size(), 1u);
}

TEST(Minimize, DropsSameIntervalComparisons) {
  // Xm < Xp is a domain clause; Xp < Ym in the tail can never hold when Ym <= Xm.
  auto cs = clauses("Xm < Xp\nYm < Yp\n-> Xp < Ym \\/ Xm < Ym\n");
  const auto R = models_of(cs);
  const auto m = minimize(cs, R);
  EXPECT_EQ(models_of(m), R);
  EXPECT_TRUE(is_ord_horn(m));
}

TEST(Minimize, CollapsesWeakerAtom) {
  auto cs = clauses("Ym < Yp\n-> Ym < Xm \\/ Yp < Xm\n");
  const auto R = models_of(cs);
  const auto m = minimize(cs, R);
  EXPECT_EQ(models_of(m), R);
  EXPECT_TRUE(is_ord_horn(m));
  bool found = false;
  for (const auto& c : m.clauses) found = found || to_string(c, m.variables) == "Ym < Xm";
  EXPECT_TRUE(found) << to_string(m);
}

TEST(Minimize, OutputIsLocallyMinimal) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    const auto R = random_relation(rng, 4);
    const auto d = llhorn_definable(R);
    if (!d.definable()) continue;
    const auto m = minimize(*d.definition, R);
    EXPECT_EQ(models_of(m), R);
    for (std::size_t i = 0; i < m.clauses.size(); ++i) {
      auto drop = m;
      drop.clauses.erase(drop.clauses.begin() + static_cast<std::ptrdiff_t>(i));
      EXPECT_FALSE(models_of(drop) == R);
    }
  }
}

TEST(Minimize, RejectsWrongRelation) {
  auto cs = clauses("x < y");
  EXPECT_THROW(minimize(cs, PointRelation::full(2)), Error);
}

TEST(OrdHornSolver, Examples) {
  EXPECT_FALSE(ordhorn_satisfiable(clauses("x = y\nx < y")).satisfiable);
  const auto r = ordhorn_satisfiable(clauses("x != y \\/ u = v\nx = y\nu < v"));
  EXPECT_FALSE(r.satisfiable);
  EXPECT_GE(r.firings, 1u);
  EXPECT_TRUE(ordhorn_satisfiable(clauses("x != y \\/ u = v")).satisfiable);
  EXPECT_THROW(ordhorn_satisfiable(clauses("a < b \\/ c < d")), InapplicableStrategy);
}

TEST(OrdHornSolver, WeakCycleEntailsEquality) {
  auto cs = clauses("a <= b\nb <= a\na != b \\/ c < d\nd <= c");
  EXPECT_FALSE(ordhorn_satisfiable(cs).satisfiable);
}

TEST(OrdHornSolver, ModelSatisfiesClauses) {
  auto cs = clauses("a <= b\nb != c \\/ a = c\nc < d\nd != a \\/ b < a");
  const auto r = ordhorn_satisfiable(cs);
  ASSERT_TRUE(r.satisfiable);
  const auto w = weak_order_of(*r.model);
  for (const auto& c : cs.clauses) EXPECT_TRUE(clause_holds(c, w));
  EXPECT_EQ(r.backtracks, 0u);
}
