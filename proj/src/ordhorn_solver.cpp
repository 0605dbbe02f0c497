#include "qsr/ordhorn_solver.hpp"

#include "qsr/error.hpp"

namespace qsr {

OrdHornResult ordhorn_satisfiable(const ClauseSet& cs, const std::map<int, Rational>& constants) {
  std::vector<ORDClause> clauses;
  for (const auto& c : cs.clauses) {
    auto o = to_ord(c);
    if (!o) throw InapplicableStrategy("clause '" + to_string(c, cs.variables) + "' is not ORD-Horn");
    clauses.push_back(std::move(*o));
  }
  OrdHornResult res;
  ConjunctiveStore store(static_cast<int>(cs.variables.size()));
  for (const auto& [v, q] : constants) store.fix(v, q);
  std::vector<char> fired(clauses.size(), 0);
  auto classes = store.equality_classes();
  if (!classes) return res;
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i < clauses.size(); ++i) {
      if (fired[i]) continue;
      const auto& c = clauses[i];
      bool refuted = true;
      for (auto [x, y] : c.neq) refuted = refuted && (*classes)[x] == (*classes)[y];
      if (!refuted) continue;
      fired[i] = 1;
      ++res.firings;
      if (!c.head) return res;
      store.add(OrderAtom::make(c.head->lhs, c.head->op, c.head->rhs));
      classes = store.equality_classes();
      if (!classes) return res;
      progress = true;
    }
  }
  res.satisfiable = true;
  res.model = store.model();
  return res;
}

}  // namespace qsr
