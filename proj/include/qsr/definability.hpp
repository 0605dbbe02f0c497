#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qsr/clauses.hpp"

namespace qsr {

enum class HornClass { OrdHorn, LLHorn, DualLLHorn };

std::string to_string(HornClass c);

/// Outcome of a definability decision: a defining clause set, or an excluded
/// weak order that no clause of the class separates from the relation.
struct Definability {
  std::optional<ClauseSet> definition;
  std::optional<WeakOrder> witness;

  bool definable() const { return definition.has_value(); }
};

/// Strongest clause of the class that is false at `w` and true on all of R,
/// built from the literal-maximal antecedent of w. nullopt when none exists.
/// `w` must lie outside R. Clauses only compare variables of one sort.
std::optional<Clause> separating_clause(const PointRelation& R, const WeakOrder& w, HornClass cls);

/// Separation decision. `names` label the variables (default x1..xk).
Definability definable(const PointRelation& R, HornClass cls,
                       std::vector<std::string> names = {});
Definability ordhorn_definable(const PointRelation& R, std::vector<std::string> names = {});
Definability llhorn_definable(const PointRelation& R, std::vector<std::string> names = {});
Definability dual_llhorn_definable(const PointRelation& R, std::vector<std::string> names = {});

/// Drops clauses whose removal keeps the models, then greedily shrinks each
/// sequent (all_equal flag, tail atoms, <= heads) while the models stay R.
/// Repeats until neither step applies. Throws when models_of(cs) != R.
ClauseSet minimize(const ClauseSet& cs, const PointRelation& R);

}  // namespace qsr
