#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qsr/order_store.hpp"
#include "qsr/point_relation.hpp"
#include "qsr/relations.hpp"

namespace qsr {

/// One conjunct of a primitive positive formula.
struct PPAtom {
  enum class Kind { Relation, Equal, Order, Forw };
  Kind kind = Kind::Relation;
  QualitativeRelation relation;  // Kind::Relation
  OrderOp op = OrderOp::Lt;      // Kind::Order (point structure only)
  std::vector<int> args;         // indices into free ++ exists
};

/// Existential-conjunctive formula over a structure's basic relations, its
/// equality, and (for the point structure) the order atoms <, <=, =.
struct PPFormula {
  Structure structure;
  std::vector<std::string> free;
  std::vector<std::string> exists;
  std::vector<PPAtom> atoms;

  std::size_t variables() const { return free.size() + exists.size(); }
  const std::string& var_name(int i) const;
  std::string to_string() const;
};

/// Parses e.g. "exists Y1 W . Y s Y1 & X s W & Y1 f W" with the given free
/// variables. Relation tokens are single codes or "{ c1 c2 }" sets; "X = Y" is
/// equality; the point structure takes "u < v", "u <= v", "u = v"; DIA takes
/// "forw X"; "true" is the empty conjunction. Throws on unknown symbols.
PPFormula parse_pp(Structure s, std::string_view free_vars, std::string_view body);

/// Exact satisfiability engine for conjunctions of pp-formula instances over a
/// shared pool of element variables. Atoms compile to endpoint order atoms;
/// disjunctive relation atoms become choice points explored depth-first with
/// ConjunctiveStore pruning. BA atoms that are products of per-axis sets branch
/// per axis.
class PPProblem {
 public:
  explicit PPProblem(Structure s) : structure_(s) {}

  Structure structure() const { return structure_; }
  int add_element();
  int elements() const { return elements_; }
  int slot(int element, int k) const;
  void fix(int element, const Element& value);
  /// Instantiates the formula with its free variables bound to `binding`;
  /// existentials become fresh elements.
  void add(const PPFormula& f, std::span<const int> binding);
  void add_relation(const QualitativeRelation& r, int a, int b);
  void add_slot_atom(const OrderAtom& a) { fixed_atoms_.push_back(a); }

  /// Satisfiability; on success optionally returns slot values.
  bool solve(std::vector<Rational>* witness = nullptr) const;
  std::size_t nodes() const { return nodes_; }

 private:
  using Alternative = std::vector<OrderAtom>;
  Structure structure_;
  int elements_ = 0;
  std::vector<OrderAtom> fixed_atoms_;
  std::vector<std::vector<Alternative>> groups_;
  mutable std::size_t nodes_ = 0;
};

/// Truth of the formula under an assignment of its free variables.
bool eval_pp_formula(const PPFormula& f, std::span<const Element> assignment);

/// Order types of the free-variable endpoint tuples satisfying the formula
/// (all free variables must be point variables, i.e. the point structure).
PointRelation formula_models(const PPFormula& f, std::vector<int> sorts = {});

}  // namespace qsr
