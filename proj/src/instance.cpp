#include "qsr/instance.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>
#include <tuple>

#include "qsr/error.hpp"

namespace qsr {

namespace {

int index_in(const std::vector<std::string>& names, std::string_view name) {
  const auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

QualitativeRelation equality_relation(Structure s) {
  switch (s.kind) {
    case StructureKind::IA: return QualitativeRelation::single({s, ia::eq});
    case StructureKind::DIA: return QualitativeRelation::single({s, dia::eq});
    case StructureKind::BA: {
      std::vector<std::uint32_t> axes(s.dim, ia::eq);
      return QualitativeRelation::single(ba_code(axes));
    }
    default: throw DefinitionMissing(s.name() + " has no equality relation");
  }
}

// Adds the formula's atoms to a calculus instance, binding its free variables
// to `binding` and its existentials to fresh variables.
void instantiate(QualInstance& out, const PPFormula& f, const std::vector<std::string>& binding,
                 int& fresh) {
  std::vector<std::string> names = binding;
  for (std::size_t i = 0; i < f.exists.size(); ++i) {
    std::string name;
    do name = "_e" + std::to_string(fresh++);
    while (out.find(name) >= 0);
    names.push_back(name);
    out.variables.push_back(names.back());
  }
  for (const auto& a : f.atoms) {
    switch (a.kind) {
      case PPAtom::Kind::Relation:
        out.constraints.push_back({names[a.args[0]], a.relation, names[a.args[1]]});
        break;
      case PPAtom::Kind::Equal:
        out.constraints.push_back(
            {names[a.args[0]], equality_relation(out.calculus), names[a.args[1]]});
        break;
      case PPAtom::Kind::Forw: out.forw.push_back(names[a.args[0]]); break;
      case PPAtom::Kind::Order: throw StructureMismatch("order atom in a calculus formula");
    }
  }
}

// formula_models over 2n slots costs thousands of orders per symbol; every
// translation through the same interpretation asks for the same ones.
PointRelation cached_models(const Interpretation& J, const std::string& symbol,
                            const std::vector<int>& sorts,
                            const std::function<PointRelation()>& compute) {
  static std::mutex mu;
  static std::map<std::tuple<std::string, std::string, std::vector<int>>, PointRelation> cache;
  const auto key = std::make_tuple(J.name, symbol, sorts);
  {
    std::lock_guard lock(mu);
    if (const auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto rel = compute();
  std::lock_guard lock(mu);
  return cache.emplace(key, std::move(rel)).first->second;
}

}  // namespace

int QualInstance::find(std::string_view name) const { return index_in(variables, name); }

int PointInstance::find(std::string_view name) const { return index_in(variables, name); }

int PointInstance::variable(std::string_view name, int sort) {
  if (const int i = find(name); i >= 0) return i;
  variables.emplace_back(name);
  if (sort != 0 && sorts.empty()) sorts.assign(variables.size() - 1, 0);
  if (!sorts.empty()) sorts.push_back(sort);
  return static_cast<int>(variables.size()) - 1;
}

void PointInstance::add_clause(const Clause& c) {
  const auto vars = clause_variables(c);
  std::vector<int> local(variables.size(), -1);
  ClauseSet cs;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    local[vars[i]] = static_cast<int>(i);
    cs.variables.push_back(variables[vars[i]]);
    cs.sorts.push_back(sort_of(vars[i]));
  }
  cs.clauses.push_back(remap_clause(c, local));
  constraints.push_back({vars, models_of(cs), c});
}

void PointInstance::add_atoms(std::span<const OrderAtom> atoms) {
  std::vector<int> vars;
  for (const auto& a : atoms) {
    for (const auto* t : {&a.lhs, &a.rhs}) {
      if (!t->is_var()) throw Error("constants are only allowed as 'x = value'");
      vars.push_back(t->var_index());
    }
  }
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  std::vector<int> local(variables.size(), -1), sorts_local;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    local[vars[i]] = static_cast<int>(i);
    sorts_local.push_back(sort_of(vars[i]));
  }
  std::vector<OrderAtom> mapped;
  for (const auto& a : atoms) {
    mapped.push_back(OrderAtom::make(local[a.lhs.var_index()], a.op, local[a.rhs.var_index()]));
  }
  constraints.push_back(
      {vars, PointRelation::of_atoms(vars.size(), mapped, sorts_local), std::nullopt});
}

std::vector<OrderAtom> order_atoms(const WeakOrder& w, std::span<const int> scope,
                                   std::span<const int> sorts) {
  std::vector<std::size_t> pos(w.arity());
  std::iota(pos.begin(), pos.end(), 0);
  auto sort_at = [&](std::size_t i) { return sorts.empty() ? 0 : sorts[i]; };
  std::stable_sort(pos.begin(), pos.end(), [&](auto a, auto b) {
    if (sort_at(a) != sort_at(b)) return sort_at(a) < sort_at(b);
    return w.rank(a) < w.rank(b);
  });
  std::vector<OrderAtom> out;
  for (std::size_t i = 1; i < pos.size(); ++i) {
    const auto a = pos[i - 1], b = pos[i];
    if (sort_at(a) != sort_at(b)) continue;
    out.push_back(
        OrderAtom::make(scope[a], w.rank(a) == w.rank(b) ? OrderOp::Eq : OrderOp::Lt, scope[b]));
  }
  return out;
}

std::vector<PointConstraint> factor_by_sort(const PointConstraint& c,
                                            std::span<const int> slot_sorts) {
  std::map<int, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < c.scope.size(); ++i) {
    groups[slot_sorts.empty() ? 0 : slot_sorts[c.scope[i]]].push_back(i);
  }
  if (groups.size() < 2) return {c};
  std::size_t product = 1;
  std::vector<PointConstraint> parts;
  for (const auto& [sort, slots] : groups) {
    auto models = c.relation.project(slots);
    product *= models.size();
    PointConstraint part;
    for (auto i : slots) part.scope.push_back(c.scope[i]);
    part.relation = PointRelation(slots.size(), std::vector<int>(slots.size(), 0), models);
    parts.push_back(std::move(part));
  }
  if (product != c.relation.size()) return {c};
  return parts;
}

std::vector<std::string> expanded_names(Structure target, int k, std::string_view var) {
  if (static_cast<std::size_t>(k) == slots_per_element(target)) return slot_names(target, var);
  if (k == 1) return {std::string(var)};
  std::vector<std::string> out;
  for (int i = 1; i <= k; ++i) out.push_back(std::string(var) + "." + std::to_string(i));
  return out;
}

PointInstance translate_instance(const QualInstance& inst, const Interpretation& J) {
  if (J.source.kind != StructureKind::Point) {
    throw StructureMismatch(J.name + " is not an interpretation in the point language");
  }
  if (!(J.target == inst.calculus)) {
    throw CalculusMismatch(J.name + " interprets " + J.target.name() + ", not " +
                           inst.calculus.name());
  }
  if (J.has_relation("forw")) {
    // the formulas only read forward intervals
    for (const auto& v : inst.variables) {
      if (std::find(inst.forw.begin(), inst.forw.end(), v) == inst.forw.end()) {
        throw DefinitionMissing(J.name + " covers forward intervals only; " + v + " is not forw");
      }
    }
  }
  const int k = J.dimension;
  const auto natural = static_cast<std::size_t>(k) == slots_per_element(J.target)
                           ? slot_sorts(J.target)
                           : std::vector<int>(k, 0);

  auto build = [&](const std::vector<int>& sk) {
    std::vector<int> s2 = sk;
    s2.insert(s2.end(), sk.begin(), sk.end());
    PointInstance out;
    std::vector<std::vector<int>> ids;
    for (const auto& v : inst.variables) {
      std::vector<int> slots;
      const auto names = expanded_names(J.target, k, v);
      for (int i = 0; i < k; ++i) slots.push_back(out.variable(names[i], sk[i]));
      ids.push_back(std::move(slots));
    }
    auto add = [&](std::vector<int> scope, PointRelation rel) {
      if (rel == PointRelation::full(rel.arity(), rel.sorts())) return;
      for (auto& part : factor_by_sort({std::move(scope), std::move(rel), std::nullopt}, out.sorts)) {
        out.constraints.push_back(std::move(part));
      }
    };
    const auto domain = cached_models(J, " domain", sk, [&] { return formula_models(J.domain, sk); });
    for (const auto& slots : ids) add(slots, domain);
    for (const auto& v : inst.forw) {
      const int i = inst.find(v);
      if (i < 0) throw Error("forw on undeclared variable " + v);
      add(ids[i], cached_models(J, "forw", sk, [&] { return formula_models(J.relation("forw"), sk); }));
    }
    // pairs of domain elements; intersecting keeps constraints small to define
    const auto pair_domain = cached_models(J, " pair domain", sk, [&] {
      std::vector<WeakOrder> pair_models;
      std::vector<std::size_t> lo(k), hi(k);
      std::iota(lo.begin(), lo.end(), 0);
      std::iota(hi.begin(), hi.end(), k);
      for (auto& w : enumerate_weak_orders(s2)) {
        if (domain.contains(w.restrict(lo, sk)) && domain.contains(w.restrict(hi, sk))) {
          pair_models.push_back(std::move(w));
        }
      }
      return PointRelation(2 * k, s2, std::move(pair_models));
    });
    for (const auto& c : inst.constraints) {
      const int a = inst.find(c.x), b = inst.find(c.y);
      if (a < 0 || b < 0) throw Error("constraint on undeclared variable");
      auto scope = ids[a];
      scope.insert(scope.end(), ids[b].begin(), ids[b].end());
      PointRelation rel = PointRelation::empty(2 * k, s2);
      for (const auto& basic : c.relation.basics()) {
        const auto name = basic.name();
        rel = rel.unite(cached_models(J, name, s2, [&] { return formula_models(J.relation(name), s2); }));
      }
      add(std::move(scope), rel.intersect(pair_domain));
    }
    return out;
  };
  try {
    return build(natural);
  } catch (const StructureMismatch&) {
    // some formula compares slots the target keeps on separate axes
    return build(std::vector<int>(k, 0));
  }
}

QualInstance translate_instance(const PointInstance& inst, const Interpretation& I) {
  if (I.target.kind != StructureKind::Point) {
    throw StructureMismatch(I.name + " does not interpret the point language");
  }
  if (!inst.constants.empty()) {
    throw DefinitionMissing("constants have no pp-definition through " + I.name);
  }
  QualInstance out;
  out.calculus = I.source;
  std::vector<std::vector<std::string>> names;
  for (const auto& v : inst.variables) {
    auto n = expanded_names(Structure::point(), I.dimension, v);
    out.variables.insert(out.variables.end(), n.begin(), n.end());
    names.push_back(std::move(n));
  }
  int fresh = 0;
  for (const auto& n : names) instantiate(out, I.domain, n, fresh);
  for (const auto& c : inst.constraints) {
    if (c.relation.size() != 1) {
      throw DefinitionMissing("disjunctive point constraint has no pp-definition through " +
                              I.name);
    }
    for (const auto& atom : order_atoms(c.relation.models()[0], c.scope)) {
      const auto& f = I.relation(atom.op == OrderOp::Eq ? "=" : "<");
      auto binding = names[atom.lhs.var_index()];
      const auto& rhs = names[atom.rhs.var_index()];
      binding.insert(binding.end(), rhs.begin(), rhs.end());
      instantiate(out, f, binding, fresh);
    }
  }
  return out;
}

QualInstance eliminate_forw(const QualInstance& inst) {
  if (inst.calculus.kind != StructureKind::DIA) return inst;
  QualInstance out = inst;
  out.forw.clear();
  std::vector<std::string> chain;
  for (const auto& v : inst.forw) {
    if (std::find(chain.begin(), chain.end(), v) == chain.end()) chain.push_back(v);
  }
  const auto& same = catalog().definition("dia.same").formula;
  int fresh = 0;
  for (std::size_t i = 1; i < chain.size(); ++i) {
    instantiate(out, same, {chain[i - 1], chain[i]}, fresh);
  }
  return out;
}

}  // namespace qsr
