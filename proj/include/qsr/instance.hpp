#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qsr/clauses.hpp"
#include "qsr/interpretation.hpp"
#include "qsr/point_relation.hpp"

namespace qsr {

struct QualConstraint {
  std::string x;
  QualitativeRelation relation;
  std::string y;
};

/// CSP instance over one of the calculi; `forw` lists DIA unary constraints.
struct QualInstance {
  Structure calculus = Structure::ia();
  std::vector<std::string> variables;
  std::vector<QualConstraint> constraints;
  std::vector<std::string> forw;

  int find(std::string_view name) const;  // -1 when missing
};

/// A constraint of the point language: `relation` over the variables listed
/// in `scope`. `clause` keeps the source syntax when the constraint was read
/// as a clause.
struct PointConstraint {
  std::vector<int> scope;
  PointRelation relation;
  std::optional<Clause> clause;
};

/// CSP instance over (Q;<). Variables may carry sorts (independent axes);
/// an empty `sorts` means one sort.
struct PointInstance {
  std::vector<std::string> variables;
  std::vector<int> sorts;
  std::vector<PointConstraint> constraints;
  std::map<int, Rational> constants;

  int find(std::string_view name) const;
  int variable(std::string_view name, int sort = 0);  // adds when missing
  int sort_of(int v) const { return sorts.empty() ? 0 : sorts[v]; }
  /// Adds the constraint, read as the clause's models over its variables.
  void add_clause(const Clause& c);
  void add_atoms(std::span<const OrderAtom> atoms);
};

using Instance = std::variant<QualInstance, PointInstance>;

/// Conjunctive points-to-calculus atoms of a single weak order over `scope`.
std::vector<OrderAtom> order_atoms(const WeakOrder& w, std::span<const int> scope,
                                   std::span<const int> sorts = {});

/// Splits a relation whose models are the product of their per-sort
/// projections into one constraint per sort; otherwise returns it unchanged.
std::vector<PointConstraint> factor_by_sort(const PointConstraint& c,
                                            std::span<const int> slot_sorts);

/// Calculus instance through an interpretation in the point language (ia.J,
/// ra.J, cdc.J, dia.J). Each variable v becomes v's slots, its domain formula
/// is added, and every constraint becomes the union of its basics' formulas.
/// Throws DefinitionMissing when a basic has no formula (dia.J covers forward
/// intervals only).
PointInstance translate_instance(const QualInstance& inst, const Interpretation& J);

/// Point instance through an interpretation of (Q;<) in a calculus (ia.I1 and
/// friends). Only conjunctive constraints (a single model) translate;
/// existential variables of the formulas become fresh variables.
QualInstance translate_instance(const PointInstance& inst, const Interpretation& I);

/// Drops the forw constraints of a DIA instance, chaining the formerly forward
/// variables pairwise by the pp-definition of "same direction".
QualInstance eliminate_forw(const QualInstance& inst);

/// Names of the point variables standing for `var` under an interpretation of
/// dimension k over `target`.
std::vector<std::string> expanded_names(Structure target, int k, std::string_view var);

}  // namespace qsr
