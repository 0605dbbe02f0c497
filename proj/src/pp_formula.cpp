#include "qsr/pp_formula.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <sstream>

#include "qsr/error.hpp"

namespace qsr {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> words(std::string_view s) {
  std::stringstream ss{std::string(s)};
  std::vector<std::string> out;
  std::string w;
  while (ss >> w) out.push_back(w);
  return out;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

}  // namespace

const std::string& PPFormula::var_name(int i) const {
  const auto n = static_cast<int>(free.size());
  return i < n ? free.at(i) : exists.at(i - n);
}

std::string PPFormula::to_string() const {
  std::string out;
  if (!exists.empty()) {
    out += "exists";
    for (const auto& e : exists) out += " " + e;
    out += " . ";
  }
  if (atoms.empty()) return out + "true";
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i) out += " & ";
    const auto& a = atoms[i];
    switch (a.kind) {
      case PPAtom::Kind::Forw: out += "forw " + var_name(a.args[0]); break;
      case PPAtom::Kind::Equal: out += var_name(a.args[0]) + " = " + var_name(a.args[1]); break;
      case PPAtom::Kind::Order:
        out += var_name(a.args[0]) + " " + std::string(op_symbol(a.op)) + " " +
               var_name(a.args[1]);
        break;
      case PPAtom::Kind::Relation: {
        const auto codes = a.relation.basics();
        const auto rel = codes.size() == 1 ? codes[0].name() : a.relation.to_string();
        out += var_name(a.args[0]) + " " + rel + " " + var_name(a.args[1]);
        break;
      }
    }
  }
  return out;
}

PPFormula parse_pp(Structure s, std::string_view free_vars, std::string_view body) {
  PPFormula f;
  f.structure = s;
  f.free = words(free_vars);
  std::string rest = trim(body);
  if (rest.rfind("exists ", 0) == 0) {
    const auto dot = rest.find(" . ");
    if (dot == std::string::npos) throw Error("expected ' . ' after exists list");
    f.exists = words(rest.substr(7, dot - 7));
    rest = trim(rest.substr(dot + 3));
  }
  auto index_of = [&](const std::string& name) {
    for (int i = 0; i < static_cast<int>(f.variables()); ++i) {
      if (f.var_name(i) == name) return i;
    }
    throw Error("unbound variable '" + name + "' in pp-formula");
  };
  if (rest == "true") return f;
  for (const auto& conj : split(rest, '&')) {
    auto toks = words(conj);
    if (toks.size() == 2 && toks[0] == "forw") {
      if (s.kind != StructureKind::DIA) throw Error("forw is only available over DIA");
      f.atoms.push_back({PPAtom::Kind::Forw, {}, OrderOp::Lt, {index_of(toks[1])}});
      continue;
    }
    if (toks.size() < 3) throw Error("malformed atom '" + conj + "'");
    const int a = index_of(toks.front());
    const int b = index_of(toks.back());
    std::string middle;
    for (std::size_t i = 1; i + 1 < toks.size(); ++i) middle += (i > 1 ? " " : "") + toks[i];
    if (s.kind == StructureKind::Point) {
      PPAtom atom{PPAtom::Kind::Order, {}, OrderOp::Lt, {a, b}};
      if (middle == "<") atom.op = OrderOp::Lt;
      else if (middle == "<=") atom.op = OrderOp::Le;
      else if (middle == "=") atom.op = OrderOp::Eq;
      else if (middle == ">") atom = {PPAtom::Kind::Order, {}, OrderOp::Lt, {b, a}};
      else if (middle == ">=") atom = {PPAtom::Kind::Order, {}, OrderOp::Le, {b, a}};
      else throw Error("unknown point relation '" + middle + "'");
      f.atoms.push_back(std::move(atom));
    } else if (middle == "=") {
      f.atoms.push_back({PPAtom::Kind::Equal, {}, OrderOp::Eq, {a, b}});
    } else {
      f.atoms.push_back({PPAtom::Kind::Relation, parse_relation(s, middle), OrderOp::Lt, {a, b}});
    }
  }
  return f;
}

// --- PPProblem -------------------------------------------------------------------

int PPProblem::add_element() {
  const int e = elements_++;
  const auto dom = domain_atoms(structure_, slot(e, 0));
  fixed_atoms_.insert(fixed_atoms_.end(), dom.begin(), dom.end());
  return e;
}

int PPProblem::slot(int element, int k) const {
  return element * static_cast<int>(slots_per_element(structure_)) + k;
}

void PPProblem::fix(int element, const Element& value) {
  if (!element_in(structure_, value)) {
    throw CalculusMismatch(to_string(value) + " is not an element of " + structure_.name());
  }
  const auto v = endpoints(value);
  for (std::size_t k = 0; k < v.size(); ++k) {
    fixed_atoms_.push_back(
        {Term::var(slot(element, static_cast<int>(k))), OrderOp::Eq, Term::constant(v[k])});
  }
}

void PPProblem::add_relation(const QualitativeRelation& r, int a, int b) {
  if (!(r.calculus() == structure_)) throw CalculusMismatch("relation over the wrong calculus");
  const int n = static_cast<int>(slots_per_element(structure_));
  auto remap = [&](const std::vector<OrderAtom>& atoms, std::span<const int> map) {
    std::vector<OrderAtom> out;
    for (const auto& at : atoms) {
      out.push_back(OrderAtom::make(map[at.lhs.var_index()], at.op, map[at.rhs.var_index()]));
    }
    return out;
  };
  std::vector<int> pair_map;
  for (int k = 0; k < n; ++k) pair_map.push_back(slot(a, k));
  for (int k = 0; k < n; ++k) pair_map.push_back(slot(b, k));

  std::vector<std::vector<Alternative>> new_groups;
  if (structure_.kind == StructureKind::BA && r.is_product() && !r.empty()) {
    const auto proj = r.projections();
    for (int i = 0; i < structure_.dim; ++i) {
      if (proj[i].size() == ia::kCount) continue;
      const std::array<int, 4> axis_map{slot(a, 2 * i), slot(a, 2 * i + 1), slot(b, 2 * i),
                                        slot(b, 2 * i + 1)};
      std::vector<Alternative> g;
      for (const auto& c : proj[i].basics()) {
        g.push_back(remap(basic_to_point_formula(c).alternatives[0], axis_map));
      }
      new_groups.push_back(std::move(g));
    }
  } else if (structure_.kind == StructureKind::IA && r.size() == ia::kCount) {
    // Top: only the domain atoms, already present.
  } else {
    std::vector<Alternative> g;
    for (const auto& c : r.basics()) {
      for (const auto& alt : basic_to_point_formula(c).alternatives) {
        g.push_back(remap(alt, pair_map));
      }
    }
    new_groups.push_back(std::move(g));
  }
  for (auto& g : new_groups) {
    if (g.size() == 1) {
      fixed_atoms_.insert(fixed_atoms_.end(), g[0].begin(), g[0].end());
    } else {
      groups_.push_back(std::move(g));
    }
  }
}

void PPProblem::add(const PPFormula& f, std::span<const int> binding) {
  if (!(f.structure == structure_)) throw StructureMismatch("formula over the wrong structure");
  if (binding.size() != f.free.size()) throw Error("pp-formula binding arity mismatch");
  std::vector<int> ids(binding.begin(), binding.end());
  for (std::size_t i = 0; i < f.exists.size(); ++i) ids.push_back(add_element());
  const int n = static_cast<int>(slots_per_element(structure_));
  for (const auto& atom : f.atoms) {
    switch (atom.kind) {
      case PPAtom::Kind::Relation:
        add_relation(atom.relation, ids[atom.args[0]], ids[atom.args[1]]);
        break;
      case PPAtom::Kind::Equal:
        for (int k = 0; k < n; ++k) {
          fixed_atoms_.push_back(OrderAtom::make(slot(ids[atom.args[0]], k), OrderOp::Eq,
                                                 slot(ids[atom.args[1]], k)));
        }
        break;
      case PPAtom::Kind::Order:
        fixed_atoms_.push_back(
            OrderAtom::make(slot(ids[atom.args[0]], 0), atom.op, slot(ids[atom.args[1]], 0)));
        break;
      case PPAtom::Kind::Forw:
        fixed_atoms_.push_back(
            OrderAtom::make(slot(ids[atom.args[0]], 0), OrderOp::Lt, slot(ids[atom.args[0]], 1)));
        break;
    }
  }
}

bool PPProblem::solve(std::vector<Rational>* witness) const {
  nodes_ = 0;
  for (const auto& g : groups_) {
    if (g.empty()) return false;
  }
  std::vector<const std::vector<Alternative>*> order;
  for (const auto& g : groups_) order.push_back(&g);
  std::stable_sort(order.begin(), order.end(),
                   [](auto* x, auto* y) { return x->size() < y->size(); });

  const int vars = elements_ * static_cast<int>(slots_per_element(structure_));
  std::function<bool(std::size_t, std::vector<OrderAtom>&)> dfs =
      [&](std::size_t depth, std::vector<OrderAtom>& atoms) -> bool {
    ++nodes_;
    ConjunctiveStore store(vars);
    store.add(atoms);
    if (!store.consistent()) return false;
    if (depth == order.size()) {
      if (witness) *witness = *store.model();
      return true;
    }
    for (const auto& alt : *order[depth]) {
      const auto mark = atoms.size();
      atoms.insert(atoms.end(), alt.begin(), alt.end());
      if (dfs(depth + 1, atoms)) return true;
      atoms.resize(mark);
    }
    return false;
  };
  auto atoms = fixed_atoms_;
  return dfs(0, atoms);
}

bool eval_pp_formula(const PPFormula& f, std::span<const Element> assignment) {
  if (assignment.size() != f.free.size()) throw Error("assignment arity mismatch");
  PPProblem p(f.structure);
  std::vector<int> ids;
  for (const auto& e : assignment) {
    const int id = p.add_element();
    p.fix(id, e);
    ids.push_back(id);
  }
  p.add(f, ids);
  return p.solve();
}

PointRelation formula_models(const PPFormula& f, std::vector<int> sorts) {
  if (f.structure.kind != StructureKind::Point) {
    throw StructureMismatch("formula_models needs a point-language formula");
  }
  const auto k = f.free.size();
  if (sorts.empty()) sorts.assign(k, 0);
  const bool direct = f.exists.empty();
  std::vector<WeakOrder> models;
  for (auto& w : enumerate_weak_orders(sorts)) {
    bool ok = true;
    if (direct) {
      for (const auto& a : f.atoms) {
        const int x = w.rank(a.args[0]);
        const int y = w.rank(a.args[1]);
        if (sorts[a.args[0]] != sorts[a.args[1]]) {
          throw StructureMismatch("formula compares slots of different sorts");
        }
        ok = a.op == OrderOp::Lt ? x < y : a.op == OrderOp::Le ? x <= y : x == y;
        if (!ok) break;
      }
    } else {
      std::vector<Element> assignment;
      for (auto r : w.ranks()) assignment.emplace_back(Rational(r));
      ok = eval_pp_formula(f, assignment);
    }
    if (ok) models.push_back(std::move(w));
  }
  return PointRelation(k, std::move(sorts), std::move(models));
}

}  // namespace qsr
