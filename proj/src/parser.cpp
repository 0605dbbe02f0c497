#include "qsr/parser.hpp"

#include <algorithm>
#include <sstream>

#include "qsr/definability.hpp"
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
  for (std::string w; ss >> w;) out.push_back(w);
  return out;
}

bool declared(const std::vector<std::string>& vars, const std::string& v) {
  return std::find(vars.begin(), vars.end(), v) != vars.end();
}

// Clauses over scope-local indices defining a point constraint.
std::vector<Clause> defining_clauses(const PointConstraint& c) {
  for (auto cls : {HornClass::OrdHorn, HornClass::LLHorn, HornClass::DualLLHorn}) {
    const auto def = definable(c.relation, cls);
    if (def.definable()) return minimize(*def.definition, c.relation).clauses;
  }
  // one clause per excluded order, literals dropped while it stays true on R
  std::vector<int> local(c.scope.size());
  for (std::size_t i = 0; i < local.size(); ++i) local[i] = static_cast<int>(i);
  auto valid = [&](const DisjClause& d) {
    return std::all_of(c.relation.models().begin(), c.relation.models().end(),
                       [&](const WeakOrder& m) { return d.holds(m); });
  };
  std::vector<Clause> clauses;
  for (const auto& w : enumerate_weak_orders(c.relation.sorts())) {
    if (c.relation.contains(w)) continue;
    DisjClause d;
    for (const auto& a : order_atoms(w, local, c.relation.sorts())) {
      const int x = a.lhs.var_index(), y = a.rhs.var_index();
      if (a.op == OrderOp::Eq) {
        d.literals.push_back({x, OrderOp::Ne, y});
      } else {
        d.literals.push_back({y, OrderOp::Le, x});
      }
    }
    for (std::size_t i = d.literals.size(); i-- > 0;) {
      auto shorter = d;
      shorter.literals.erase(shorter.literals.begin() + i);
      if (valid(shorter)) d = std::move(shorter);
    }
    auto n = normalize(d);
    if (std::find(clauses.begin(), clauses.end(), n) == clauses.end()) clauses.push_back(n);
  }
  ClauseSet cs;
  for (std::size_t i = 0; i < local.size(); ++i) cs.variables.push_back("x" + std::to_string(i));
  cs.sorts = c.relation.sorts();
  cs.clauses = std::move(clauses);
  return minimize(cs, c.relation).clauses;
}

}  // namespace

Instance parse_instance(std::string_view text) {
  std::stringstream ss{std::string(text)};
  std::optional<Structure> structure;
  QualInstance qual;
  PointInstance point;
  ClauseSet names;  // POINT: declared variables, for clause parsing
  std::string line;
  std::size_t n = 0;
  while (std::getline(ss, line)) {
    ++n;
    if (const auto h = line.find('#'); h != std::string::npos) line.resize(h);
    const auto body = trim(line);
    if (body.empty()) continue;
    try {
      const auto toks = words(body);
      if (toks[0] == "algebra") {
        if (structure) throw Error("algebra declared twice");
        if (toks.size() != 2) throw Error("expected 'algebra <name>'");
        structure = parse_structure(toks[1]);
        qual.calculus = *structure;
        continue;
      }
      if (!structure) throw Error("missing 'algebra' line");
      const bool is_point = structure->kind == StructureKind::Point;
      if (toks[0] == "vars") {
        for (std::size_t i = 1; i < toks.size(); ++i) {
          if (is_point) {
            if (point.find(toks[i]) >= 0) throw Error("variable declared twice: " + toks[i]);
            point.variable(toks[i]);
            names.variable(toks[i]);
          } else {
            if (declared(qual.variables, toks[i])) {
              throw Error("variable declared twice: " + toks[i]);
            }
            qual.variables.push_back(toks[i]);
          }
        }
        continue;
      }
      if (is_point) {
        if (toks.size() == 3 && toks[1] == "=" && point.find(toks[2]) < 0 &&
            toks[2].find_first_not_of("+-0123456789/") == std::string::npos) {
          const int v = point.find(toks[0]);
          if (v < 0) throw Error("undeclared variable " + toks[0]);
          point.constants[v] = parse_rational(toks[2]);
          continue;
        }
        const auto before = names.variables.size();
        const auto clause = parse_clause(body, names);
        if (names.variables.size() != before) {
          throw Error("undeclared variable " + names.variables.back());
        }
        point.add_clause(clause);
        continue;
      }
      if (toks[0] == "forw") {
        if (structure->kind != StructureKind::DIA) throw Error("forw is only available over DIA");
        if (toks.size() != 2) throw Error("expected 'forw <var>'");
        if (!declared(qual.variables, toks[1])) throw Error("undeclared variable " + toks[1]);
        qual.forw.push_back(toks[1]);
        continue;
      }
      const auto open = body.find('{'), close = body.rfind('}');
      if (open == std::string::npos || close == std::string::npos || close < open) {
        throw Error("expected 'X { codes } Y'");
      }
      const auto x = trim(body.substr(0, open));
      const auto y = trim(body.substr(close + 1));
      for (const auto& v : {x, y}) {
        if (v.empty() || v.find(' ') != std::string::npos) throw Error("expected 'X { codes } Y'");
        if (!declared(qual.variables, v)) throw Error("undeclared variable " + v);
      }
      auto rel = parse_relation(*structure, body.substr(open, close - open + 1));
      if (rel.empty()) throw Error("empty relation");
      qual.constraints.push_back({x, std::move(rel), y});
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(n, e.what());
    }
  }
  if (!structure) throw ParseError(n, "missing 'algebra' line");
  if (structure->kind == StructureKind::Point) return point;
  return qual;
}

std::string write_instance(const Instance& inst) {
  std::string out;
  if (const auto* q = std::get_if<QualInstance>(&inst)) {
    out += "algebra " + q->calculus.name() + "\n";
    out += "vars";
    for (const auto& v : q->variables) out += " " + v;
    out += "\n";
    for (const auto& v : q->forw) out += "forw " + v + "\n";
    for (const auto& c : q->constraints) out += c.x + " " + c.relation.to_string() + " " + c.y + "\n";
    return out;
  }
  const auto& p = std::get<PointInstance>(inst);
  out += "algebra POINT\nvars";
  for (const auto& v : p.variables) out += " " + v;
  out += "\n";
  for (const auto& [v, q] : p.constants) out += p.variables[v] + " = " + to_string(q) + "\n";
  for (const auto& c : p.constraints) {
    if (c.clause) {
      out += to_string(*c.clause, p.variables) + "\n";
      continue;
    }
    std::vector<std::string> local;
    for (int s : c.scope) local.push_back(p.variables[s]);
    for (const auto& clause : defining_clauses(c)) out += to_string(clause, local) + "\n";
  }
  return out;
}

}  // namespace qsr
