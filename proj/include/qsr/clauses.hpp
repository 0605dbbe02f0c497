#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qsr/order_store.hpp"
#include "qsr/point_relation.hpp"

namespace qsr {

/// lhs op rhs over clause-set variable indices; op is one of < <= = !=.
struct Literal {
  int lhs = 0;
  OrderOp op = OrderOp::Lt;
  int rhs = 0;

  bool holds(const WeakOrder& w) const;
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

using VarPair = std::pair<int, int>;

/// (x1=y1 & ... & xk=yk) -> z1<z0 | ... | zl<z0 [| z0=z1=...=zl].
/// With `dual` every < reads as >.
struct LLClause {
  std::vector<VarPair> antecedent;
  int head = 0;
  std::vector<int> tail;
  bool all_equal = false;
  bool dual = false;

  bool holds(const WeakOrder& w) const;
  friend auto operator<=>(const LLClause&, const LLClause&) = default;
};

/// x1!=y1 | ... | xk!=yk [| head], head one of u<v, u<=v, u=v.
struct ORDClause {
  std::vector<VarPair> neq;
  std::optional<Literal> head;

  bool holds(const WeakOrder& w) const;
  friend auto operator<=>(const ORDClause&, const ORDClause&) = default;
};

/// Arbitrary disjunction of literals.
struct DisjClause {
  std::vector<Literal> literals;

  bool holds(const WeakOrder& w) const;
  friend auto operator<=>(const DisjClause&, const DisjClause&) = default;
};

using Clause = std::variant<LLClause, ORDClause, DisjClause>;

bool clause_holds(const Clause& c, const WeakOrder& w);

/// Variables mentioned by a clause, sorted and unique.
std::vector<int> clause_variables(const Clause& c);

/// ORD-Horn reading when the clause has at most one non-disequality literal.
std::optional<ORDClause> to_ord(const Clause& c);
/// ll-Horn reading; an equality head splits into two <= clauses.
std::optional<std::vector<LLClause>> to_ll(const Clause& c, bool dual = false);
/// Literal list when expressible (all_equal over more than two variables is not).
std::optional<DisjClause> to_disj(const Clause& c);

/// Renames variable i to map[i].
Clause remap_clause(const Clause& c, std::span<const int> map);

/// Canonical form: ORD-Horn if possible, then ll-Horn, else a disjunction;
/// literals and pairs sorted, duplicates removed.
Clause normalize(const Clause& c);

struct ClauseSet {
  std::vector<std::string> variables;
  std::vector<int> sorts;  // per variable; empty means a single sort
  std::vector<Clause> clauses;
  bool dual = false;

  int variable(std::string_view name);  // adds when missing
  int find(std::string_view name) const;  // -1 when missing
  std::vector<int> effective_sorts() const;
};

bool is_ll_horn(const ClauseSet& cs);
bool is_dual_ll_horn(const ClauseSet& cs);
bool is_ord_horn(const ClauseSet& cs);

/// Parses one clause, e.g. "x != y \/ u = v" or "x = y -> z1 < z0 \/ z2 < z0 [alleq]".
/// Unknown variables are added to `cs`.
Clause parse_clause(std::string_view text, ClauseSet& cs);
/// One clause per non-empty line; '#' starts a comment.
ClauseSet parse_clauses(std::string_view text);

std::string to_string(const Clause& c, const std::vector<std::string>& names);
std::string to_string(const ClauseSet& cs);

/// Weak orders on the clause-set variables satisfying every clause.
PointRelation models_of(const ClauseSet& cs, std::size_t cap = kWeakOrderCap);

}  // namespace qsr
