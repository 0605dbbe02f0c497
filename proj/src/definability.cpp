#include "qsr/definability.hpp"

#include <algorithm>

#include "qsr/error.hpp"
#include "qsr/kernels.hpp"

namespace qsr {

std::string to_string(HornClass c) {
  switch (c) {
    case HornClass::OrdHorn: return "ORD-Horn";
    case HornClass::LLHorn: return "ll-Horn";
    case HornClass::DualLLHorn: return "dual-ll-Horn";
  }
  return "?";
}

namespace {

// Models of R agreeing with every equality of w (given as class representatives).
std::vector<const WeakOrder*> restrict_to_equalities(const PointRelation& R,
                                                     const std::vector<int>& rep) {
  std::vector<const WeakOrder*> out;
  for (const auto& m : R.models()) {
    bool ok = true;
    for (std::size_t i = 0; ok && i < rep.size(); ++i) ok = m.equal(i, rep[i]);
    if (ok) out.push_back(&m);
  }
  return out;
}

// Class representative per slot: the first slot of the same sort and rank.
std::vector<int> representatives(const WeakOrder& w, const std::vector<int>& sorts) {
  std::vector<int> rep(w.arity());
  for (std::size_t i = 0; i < w.arity(); ++i) {
    rep[i] = static_cast<int>(i);
    for (std::size_t j = 0; j < i; ++j) {
      if (sorts[j] == sorts[i] && w.equal(i, j)) {
        rep[i] = static_cast<int>(j);
        break;
      }
    }
  }
  return rep;
}

std::optional<Clause> separate_ord(const std::vector<const WeakOrder*>& Rw, const WeakOrder& w,
                                   const std::vector<int>& sorts, std::vector<VarPair> neq) {
  if (Rw.empty()) return ORDClause{std::move(neq), std::nullopt};
  const int k = static_cast<int>(w.arity());
  for (int u = 0; u < k; ++u) {
    for (int v = 0; v < k; ++v) {
      if (u == v || sorts[u] != sorts[v]) continue;
      for (auto op : {OrderOp::Lt, OrderOp::Eq, OrderOp::Le}) {
        if (op == OrderOp::Eq && u > v) continue;
        const Literal head{u, op, v};
        if (head.holds(w)) continue;
        const bool valid = std::all_of(Rw.begin(), Rw.end(),
                                       [&](const WeakOrder* m) { return head.holds(*m); });
        if (valid) return ORDClause{neq, head};
      }
    }
  }
  return std::nullopt;
}

std::optional<Clause> separate_ll(const std::vector<const WeakOrder*>& Rw, const WeakOrder& w,
                                  const std::vector<int>& sorts, const std::vector<VarPair>& ante) {
  const int k = static_cast<int>(w.arity());
  if (Rw.empty()) return LLClause{ante, 0, {}, false, false};
  std::vector<std::vector<int>> S(k);
  for (int z0 = 0; z0 < k; ++z0) {
    for (int z = 0; z < k; ++z) {
      if (z != z0 && sorts[z] == sorts[z0] && w.rank(z) >= w.rank(z0)) S[z0].push_back(z);
    }
  }
  // Maximal strict tails first.
  for (int z0 = 0; z0 < k; ++z0) {
    const bool valid = std::all_of(Rw.begin(), Rw.end(), [&](const WeakOrder* m) {
      return std::any_of(S[z0].begin(), S[z0].end(),
                         [&](int z) { return m->rank(z) < m->rank(z0); });
    });
    if (valid) return LLClause{ante, z0, S[z0], false, false};
  }
  // With the all-equal disjunct the tail must contain a variable strictly above z0.
  for (int z0 = 0; z0 < k; ++z0) {
    const auto& s = S[z0];
    for (std::uint32_t mask = 1; mask < (1U << s.size()); ++mask) {
      std::vector<int> T;
      bool above = false;
      for (std::size_t b = 0; b < s.size(); ++b) {
        if (mask & (1U << b)) {
          T.push_back(s[b]);
          above = above || w.rank(s[b]) > w.rank(z0);
        }
      }
      if (!above) continue;
      const bool valid = std::all_of(Rw.begin(), Rw.end(), [&](const WeakOrder* m) {
        bool all_eq = true;
        for (int z : T) {
          if (m->rank(z) < m->rank(z0)) return true;
          all_eq = all_eq && m->equal(z, z0);
        }
        return all_eq;
      });
      if (valid) return LLClause{ante, z0, T, true, false};
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Clause> separating_clause(const PointRelation& R, const WeakOrder& w, HornClass cls) {
  const auto& sorts = R.sorts();
  if (cls == HornClass::DualLLHorn) {
    std::vector<WeakOrder> rev;
    for (const auto& m : R.models()) rev.push_back(m.reversed(sorts));
    const PointRelation Rr(R.arity(), sorts, std::move(rev));
    auto c = separating_clause(Rr, w.reversed(sorts), HornClass::LLHorn);
    if (c) {
      if (auto* l = std::get_if<LLClause>(&*c)) {
        l->dual = true;
      } else if (auto* o = std::get_if<ORDClause>(&*c); o && o->head) {
        std::swap(o->head->lhs, o->head->rhs);
        if (o->head->op == OrderOp::Eq && o->head->lhs > o->head->rhs) {
          std::swap(o->head->lhs, o->head->rhs);
        }
      }
    }
    return c;
  }
  const auto rep = representatives(w, sorts);
  std::vector<VarPair> ante;
  for (std::size_t i = 0; i < rep.size(); ++i) {
    if (rep[i] != static_cast<int>(i)) ante.push_back({rep[i], static_cast<int>(i)});
  }
  const auto Rw = restrict_to_equalities(R, rep);
  if (cls == HornClass::OrdHorn) return separate_ord(Rw, w, sorts, ante);
  return separate_ll(Rw, w, sorts, ante);
}

Definability definable(const PointRelation& R, HornClass cls, std::vector<std::string> names) {
  const auto k = R.arity();
  if (names.empty()) {
    for (std::size_t i = 0; i < k; ++i) names.push_back("x" + std::to_string(i + 1));
  }
  std::vector<WeakOrder> excluded;
  for (auto& w : enumerate_weak_orders(R.sorts())) {
    if (!R.contains(w)) excluded.push_back(std::move(w));
  }
  const auto found = kernels::separation_omp(R, excluded, cls);
  Definability out;
  ClauseSet cs;
  cs.variables = names;
  if (!R.single_sort()) cs.sorts = R.sorts();
  cs.dual = cls == HornClass::DualLLHorn;
  for (std::size_t i = 0; i < excluded.size(); ++i) {
    if (!found[i]) {
      out.witness = excluded[i];
      return out;
    }
    cs.clauses.push_back(normalize(*found[i]));
  }
  std::sort(cs.clauses.begin(), cs.clauses.end());
  cs.clauses.erase(std::unique(cs.clauses.begin(), cs.clauses.end()), cs.clauses.end());
  out.definition = std::move(cs);
  return out;
}

Definability ordhorn_definable(const PointRelation& R, std::vector<std::string> names) {
  return definable(R, HornClass::OrdHorn, std::move(names));
}
Definability llhorn_definable(const PointRelation& R, std::vector<std::string> names) {
  return definable(R, HornClass::LLHorn, std::move(names));
}
Definability dual_llhorn_definable(const PointRelation& R, std::vector<std::string> names) {
  return definable(R, HornClass::DualLLHorn, std::move(names));
}

// --- minimize ----------------------------------------------------------------

namespace {

std::vector<Clause> shrink_candidates(const Clause& c) {
  std::vector<Clause> out;
  if (const auto* l = std::get_if<LLClause>(&c)) {
    if (l->all_equal) {
      auto x = *l;
      x.all_equal = false;
      out.push_back(x);
    }
    for (std::size_t i = 0; i < l->tail.size(); ++i) {
      auto x = *l;
      x.tail.erase(x.tail.begin() + static_cast<std::ptrdiff_t>(i));
      if (x.tail.empty()) x.all_equal = false;
      out.push_back(x);
    }
  } else if (const auto* o = std::get_if<ORDClause>(&c); o && o->head) {
    if (o->head->op == OrderOp::Le) {
      for (auto op : {OrderOp::Lt, OrderOp::Eq}) {
        auto x = *o;
        x.head->op = op;
        out.push_back(x);
      }
    }
    auto x = *o;
    x.head.reset();
    out.push_back(x);
  }
  for (auto& x : out) x = normalize(x);
  return out;
}

}  // namespace

ClauseSet minimize(const ClauseSet& cs, const PointRelation& R) {
  const auto sorts = cs.effective_sorts();
  if (!(models_of(cs) == R)) throw Error("minimize: clause set does not define the relation");
  std::vector<WeakOrder> outside;
  for (auto& w : enumerate_weak_orders(sorts)) {
    if (!R.contains(w)) outside.push_back(std::move(w));
  }
  std::vector<Clause> clauses;
  for (const auto& c : cs.clauses) clauses.push_back(normalize(c));
  std::sort(clauses.begin(), clauses.end());
  clauses.erase(std::unique(clauses.begin(), clauses.end()), clauses.end());

  auto violations = [&](const Clause& c) {
    std::vector<char> v(outside.size());
    for (std::size_t i = 0; i < outside.size(); ++i) v[i] = !clause_holds(c, outside[i]);
    return v;
  };
  std::vector<std::vector<char>> viol;
  std::vector<int> count(outside.size(), 0);
  for (const auto& c : clauses) {
    viol.push_back(violations(c));
    for (std::size_t i = 0; i < outside.size(); ++i) count[i] += viol.back()[i];
  }
  auto valid_on_R = [&](const Clause& c) {
    return std::all_of(R.models().begin(), R.models().end(),
                       [&](const WeakOrder& m) { return clause_holds(c, m); });
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t c = 0; c < clauses.size();) {
      bool needed = false;
      for (std::size_t i = 0; i < outside.size() && !needed; ++i) needed = viol[c][i] && count[i] == 1;
      if (needed) {
        ++c;
        continue;
      }
      for (std::size_t i = 0; i < outside.size(); ++i) count[i] -= viol[c][i];
      clauses.erase(clauses.begin() + static_cast<std::ptrdiff_t>(c));
      viol.erase(viol.begin() + static_cast<std::ptrdiff_t>(c));
      changed = true;
    }
    for (std::size_t c = 0; c < clauses.size(); ++c) {
      bool shrunk = true;
      while (shrunk) {
        shrunk = false;
        for (const auto& cand : shrink_candidates(clauses[c])) {
          if (!valid_on_R(cand)) continue;
          auto v = violations(cand);
          bool covers = true;
          for (std::size_t i = 0; i < outside.size() && covers; ++i) {
            covers = !(viol[c][i] && count[i] == 1 && !v[i]);
          }
          if (!covers) continue;
          for (std::size_t i = 0; i < outside.size(); ++i) count[i] += v[i] - viol[c][i];
          clauses[c] = cand;
          viol[c] = std::move(v);
          shrunk = changed = true;
          break;
        }
      }
    }
  }
  ClauseSet out = cs;
  out.clauses = std::move(clauses);
  return out;
}

}  // namespace qsr
