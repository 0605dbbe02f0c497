#pragma once

#include <map>
#include <optional>
#include <vector>

#include "qsr/clauses.hpp"

namespace qsr {

struct OrdHornResult {
  bool satisfiable = false;
  std::size_t firings = 0;
  std::size_t backtracks = 0;  // stays zero: propagation never branches
  std::optional<std::vector<Rational>> model;
};

/// Monotone propagation for ORD-Horn clause sets. The store holds asserted
/// <, <=, = atoms (plus optional constants); a clause fires once every one of
/// its disequalities is refuted by the store's entailed equalities, asserting
/// its head. Unsatisfiable iff a headless clause fires or the store becomes
/// inconsistent. At the fixpoint the store's model separates all components,
/// which satisfies every unfired clause. Throws InapplicableStrategy on a
/// clause outside ORD-Horn.
OrdHornResult ordhorn_satisfiable(const ClauseSet& cs,
                                  const std::map<int, Rational>& constants = {});

}  // namespace qsr
