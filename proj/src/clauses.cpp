#include "qsr/clauses.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "qsr/error.hpp"

namespace qsr {

namespace {

bool lit_holds(const Literal& l, const WeakOrder& w) {
  const int a = w.rank(l.lhs), b = w.rank(l.rhs);
  switch (l.op) {
    case OrderOp::Lt: return a < b;
    case OrderOp::Le: return a <= b;
    case OrderOp::Eq: return a == b;
    case OrderOp::Ne: return a != b;
  }
  return false;
}

VarPair ordered(VarPair p) { return p.first <= p.second ? p : VarPair{p.second, p.first}; }

template <class T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_on(std::string_view s, std::initializer_list<std::string_view> seps) {
  std::vector<std::string> out;
  std::size_t start = 0, i = 0;
  while (i < s.size()) {
    bool hit = false;
    for (auto sep : seps) {
      if (s.substr(i, sep.size()) == sep) {
        out.push_back(trim(s.substr(start, i - start)));
        i += sep.size();
        start = i;
        hit = true;
        break;
      }
    }
    if (!hit) ++i;
  }
  out.push_back(trim(s.substr(start)));
  return out;
}

Literal parse_literal(const std::string& text, ClauseSet& cs) {
  // Longest operators first so "<=" is not read as "<".
  static const std::vector<std::pair<std::string, int>> ops = {
      {"!=", 0}, {"<=", 1}, {">=", 2}, {"≠", 0}, {"≤", 1}, {"≥", 2},
      {"<", 3},  {">", 4},  {"=", 5}};
  for (const auto& [sym, kind] : ops) {
    const auto pos = text.find(sym);
    if (pos == std::string::npos) continue;
    const auto a = trim(text.substr(0, pos));
    const auto b = trim(text.substr(pos + sym.size()));
    if (a.empty() || b.empty() || a.find_first_of(" \t") != std::string::npos ||
        b.find_first_of(" \t") != std::string::npos) {
      break;
    }
    const int x = cs.variable(a), y = cs.variable(b);
    switch (kind) {
      case 0: return {x, OrderOp::Ne, y};
      case 1: return {x, OrderOp::Le, y};
      case 2: return {y, OrderOp::Le, x};
      case 3: return {x, OrderOp::Lt, y};
      case 4: return {y, OrderOp::Lt, x};
      default: return {x, OrderOp::Eq, y};
    }
  }
  throw Error("malformed literal '" + text + "'");
}

}  // namespace

bool Literal::holds(const WeakOrder& w) const { return lit_holds(*this, w); }

bool LLClause::holds(const WeakOrder& w) const {
  for (const auto& [x, y] : antecedent) {
    if (!w.equal(x, y)) return true;
  }
  bool all_eq = true;
  for (int z : tail) {
    if (dual ? w.rank(z) > w.rank(head) : w.rank(z) < w.rank(head)) return true;
    if (!w.equal(z, head)) all_eq = false;
  }
  return all_equal && all_eq;
}

bool ORDClause::holds(const WeakOrder& w) const {
  for (const auto& [x, y] : neq) {
    if (!w.equal(x, y)) return true;
  }
  return head && head->holds(w);
}

bool DisjClause::holds(const WeakOrder& w) const {
  return std::any_of(literals.begin(), literals.end(), [&](const Literal& l) { return l.holds(w); });
}

bool clause_holds(const Clause& c, const WeakOrder& w) {
  return std::visit([&](const auto& x) { return x.holds(w); }, c);
}

std::vector<int> clause_variables(const Clause& c) {
  std::vector<int> v;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, LLClause>) {
          for (auto [a, b] : x.antecedent) v.insert(v.end(), {a, b});
          v.push_back(x.head);
          v.insert(v.end(), x.tail.begin(), x.tail.end());
        } else if constexpr (std::is_same_v<T, ORDClause>) {
          for (auto [a, b] : x.neq) v.insert(v.end(), {a, b});
          if (x.head) v.insert(v.end(), {x.head->lhs, x.head->rhs});
        } else {
          for (const auto& l : x.literals) v.insert(v.end(), {l.lhs, l.rhs});
        }
      },
      c);
  sort_unique(v);
  return v;
}

std::optional<DisjClause> to_disj(const Clause& c) {
  if (const auto* d = std::get_if<DisjClause>(&c)) return *d;
  DisjClause out;
  if (const auto* o = std::get_if<ORDClause>(&c)) {
    for (auto [a, b] : o->neq) out.literals.push_back({a, OrderOp::Ne, b});
    if (o->head) out.literals.push_back(*o->head);
    return out;
  }
  const auto& l = std::get<LLClause>(c);
  for (auto [a, b] : l.antecedent) out.literals.push_back({a, OrderOp::Ne, b});
  std::vector<int> tail;
  for (int z : l.tail) {
    if (z != l.head) tail.push_back(z);
  }
  sort_unique(tail);
  if (l.all_equal && tail.empty()) {
    out.literals.push_back({l.head, OrderOp::Le, l.head});  // trivially true
    return out;
  }
  if (l.all_equal && tail.size() > 1) return std::nullopt;
  const auto op = l.all_equal ? OrderOp::Le : OrderOp::Lt;
  for (int z : tail) {
    out.literals.push_back(l.dual ? Literal{l.head, op, z} : Literal{z, op, l.head});
  }
  return out;
}

std::optional<ORDClause> to_ord(const Clause& c) {
  if (const auto* o = std::get_if<ORDClause>(&c)) return *o;
  const auto d = to_disj(c);
  if (!d) return std::nullopt;
  ORDClause out;
  for (const auto& l : d->literals) {
    if (l.op == OrderOp::Ne) {
      if (l.lhs != l.rhs) out.neq.push_back(ordered({l.lhs, l.rhs}));
      continue;
    }
    if (l.op == OrderOp::Lt && l.lhs == l.rhs) continue;  // false literal
    if (out.head && !(*out.head == l)) return std::nullopt;
    out.head = l;
  }
  return out;
}

std::optional<std::vector<LLClause>> to_ll(const Clause& c, bool dual) {
  if (const auto* l = std::get_if<LLClause>(&c); l && l->dual == dual) return std::vector{*l};
  const auto d = to_disj(c);
  if (!d) return std::nullopt;
  std::vector<VarPair> ante;
  std::vector<Literal> rest;
  for (const auto& l : d->literals) {
    if (l.op == OrderOp::Ne) {
      if (l.lhs != l.rhs) ante.push_back(ordered({l.lhs, l.rhs}));
    } else if (!(l.op == OrderOp::Lt && l.lhs == l.rhs)) {
      rest.push_back(l);
    }
  }
  sort_unique(rest);
  auto le_clause = [&](int lo, int hi) {
    // lo <= hi; dual reads z1 > z0 | z0 = z1 with head lo.
    return dual ? LLClause{ante, lo, {hi}, true, true} : LLClause{ante, hi, {lo}, true, false};
  };
  if (rest.empty()) {
    const int head = ante.empty() ? 0 : ante.front().first;
    return std::vector{LLClause{ante, head, {}, false, dual}};
  }
  if (rest.size() == 1 && rest[0].op != OrderOp::Lt) {
    const auto& l = rest[0];
    if (l.op == OrderOp::Le) return std::vector{le_clause(l.lhs, l.rhs)};
    return std::vector{le_clause(l.lhs, l.rhs), le_clause(l.rhs, l.lhs)};
  }
  LLClause out{ante, dual ? rest[0].lhs : rest[0].rhs, {}, false, dual};
  for (const auto& l : rest) {
    if (l.op != OrderOp::Lt) return std::nullopt;
    if ((dual ? l.lhs : l.rhs) != out.head) return std::nullopt;
    out.tail.push_back(dual ? l.rhs : l.lhs);
  }
  return std::vector{out};
}

Clause normalize(const Clause& c) {
  if (auto o = to_ord(c)) {
    sort_unique(o->neq);
    if (o->head && o->head->op == OrderOp::Eq && o->head->lhs > o->head->rhs) {
      std::swap(o->head->lhs, o->head->rhs);
    }
    return *o;
  }
  for (bool dual : {false, true}) {
    if (auto l = to_ll(c, dual); l && l->size() == 1) {
      auto x = l->front();
      for (auto& p : x.antecedent) p = ordered(p);
      sort_unique(x.antecedent);
      std::erase(x.tail, x.head);
      sort_unique(x.tail);
      return x;
    }
  }
  auto d = *to_disj(c);
  sort_unique(d.literals);
  return d;
}

int ClauseSet::variable(std::string_view name) {
  if (const int i = find(name); i >= 0) return i;
  variables.emplace_back(name);
  if (!sorts.empty()) sorts.push_back(0);
  return static_cast<int>(variables.size()) - 1;
}

int ClauseSet::find(std::string_view name) const {
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (variables[i] == name) return static_cast<int>(i);
  }
  return -1;
}

std::vector<int> ClauseSet::effective_sorts() const {
  return sorts.empty() ? std::vector<int>(variables.size(), 0) : sorts;
}

bool is_ll_horn(const ClauseSet& cs) {
  return std::all_of(cs.clauses.begin(), cs.clauses.end(),
                     [](const Clause& c) { return to_ll(c, false).has_value(); });
}

bool is_dual_ll_horn(const ClauseSet& cs) {
  return std::all_of(cs.clauses.begin(), cs.clauses.end(),
                     [](const Clause& c) { return to_ll(c, true).has_value(); });
}

bool is_ord_horn(const ClauseSet& cs) {
  return std::all_of(cs.clauses.begin(), cs.clauses.end(),
                     [](const Clause& c) { return to_ord(c).has_value(); });
}

Clause parse_clause(std::string_view text, ClauseSet& cs) {
  std::string body = trim(text);
  bool alleq = false;
  if (const auto pos = body.find("[alleq]"); pos != std::string::npos) {
    alleq = true;
    body = trim(body.substr(0, pos));
  }
  std::vector<VarPair> ante;
  std::string right = body;
  const auto arrow = body.find("->");
  if (arrow != std::string::npos) {
    const auto left = trim(body.substr(0, arrow));
    right = trim(body.substr(arrow + 2));
    if (!left.empty() && left != "true") {
      for (const auto& part : split_on(left, {"/\\", "&", ","})) {
        const auto l = parse_literal(part, cs);
        if (l.op != OrderOp::Eq) throw Error("antecedent atoms must be equalities: '" + part + "'");
        ante.push_back({l.lhs, l.rhs});
      }
    }
  }
  std::vector<Literal> lits;
  if (!right.empty() && right != "false") {
    for (const auto& part : split_on(right, {"\\/", "|", "∨"})) lits.push_back(parse_literal(part, cs));
  }
  if (alleq) {
    if (lits.empty()) throw Error("[alleq] needs at least one strict atom");
    for (bool dual : {false, true}) {
      LLClause c{ante, dual ? lits[0].lhs : lits[0].rhs, {}, true, dual};
      bool ok = true;
      for (const auto& l : lits) {
        ok = ok && l.op == OrderOp::Lt && (dual ? l.lhs : l.rhs) == c.head;
        c.tail.push_back(dual ? l.rhs : l.lhs);
      }
      if (ok) return normalize(c);
    }
    throw Error("[alleq] clause needs strict atoms sharing one head: '" + std::string(text) + "'");
  }
  DisjClause d;
  for (auto [a, b] : ante) d.literals.push_back({a, OrderOp::Ne, b});
  d.literals.insert(d.literals.end(), lits.begin(), lits.end());
  return normalize(d);
}

ClauseSet parse_clauses(std::string_view text) {
  ClauseSet cs;
  std::stringstream ss{std::string(text)};
  std::string line;
  int n = 0;
  while (std::getline(ss, line)) {
    ++n;
    if (const auto h = line.find('#'); h != std::string::npos) line.resize(h);
    if (trim(line).empty()) continue;
    try {
      cs.clauses.push_back(parse_clause(line, cs));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(n, e.what());
    }
  }
  return cs;
}

std::string to_string(const Clause& c, const std::vector<std::string>& names) {
  auto name = [&](int i) {
    return i < static_cast<int>(names.size()) ? names[i] : "v" + std::to_string(i);
  };
  auto lit = [&](const Literal& l) {
    return name(l.lhs) + " " + std::string(op_symbol(l.op)) + " " + name(l.rhs);
  };
  auto join = [](const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
    return out;
  };
  if (const auto* l = std::get_if<LLClause>(&c)) {
    std::vector<std::string> ante, tail;
    for (auto [a, b] : l->antecedent) ante.push_back(name(a) + " = " + name(b));
    for (int z : l->tail) tail.push_back(name(z) + (l->dual ? " > " : " < ") + name(l->head));
    std::string out = join(ante, " & ");
    out += out.empty() ? "-> " : " -> ";
    out += tail.empty() ? "false" : join(tail, " \\/ ");
    if (l->all_equal) out += " [alleq]";
    return out;
  }
  std::vector<std::string> parts;
  if (const auto* o = std::get_if<ORDClause>(&c)) {
    for (auto [a, b] : o->neq) parts.push_back(name(a) + " != " + name(b));
    if (o->head) parts.push_back(lit(*o->head));
  } else {
    for (const auto& l : std::get<DisjClause>(c).literals) parts.push_back(lit(l));
  }
  return parts.empty() ? "false" : join(parts, " \\/ ");
}

std::string to_string(const ClauseSet& cs) {
  std::string out;
  for (const auto& c : cs.clauses) out += to_string(c, cs.variables) + "\n";
  return out;
}

PointRelation models_of(const ClauseSet& cs, std::size_t cap) {
  const auto sorts = cs.effective_sorts();
  for (const auto& c : cs.clauses) {
    const auto vars = clause_variables(c);
    for (int v : vars) {
      if (v >= static_cast<int>(sorts.size())) throw Error("clause mentions an undeclared variable");
    }
    if (auto d = to_disj(c)) {
      for (const auto& l : d->literals) {
        if (sorts[l.lhs] != sorts[l.rhs]) {
          throw StructureMismatch("clause compares variables of different sorts");
        }
      }
    }
  }
  std::vector<WeakOrder> models;
  for (auto& w : enumerate_weak_orders(sorts, cap)) {
    const bool ok = std::all_of(cs.clauses.begin(), cs.clauses.end(),
                                [&](const Clause& c) { return clause_holds(c, w); });
    if (ok) models.push_back(std::move(w));
  }
  return PointRelation(sorts.size(), sorts, std::move(models));
}

Clause remap_clause(const Clause& c, std::span<const int> map) {
  auto pair = [&](VarPair& p) { p = {map[p.first], map[p.second]}; };
  auto lit = [&](Literal& l) { l.lhs = map[l.lhs], l.rhs = map[l.rhs]; };
  Clause out = c;
  std::visit(
      [&](auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, LLClause>) {
          for (auto& p : x.antecedent) pair(p);
          x.head = map[x.head];
          for (auto& t : x.tail) t = map[t];
        } else if constexpr (std::is_same_v<T, ORDClause>) {
          for (auto& p : x.neq) pair(p);
          if (x.head) lit(*x.head);
        } else {
          for (auto& l : x.literals) lit(l);
        }
      },
      out);
  return out;
}

}  // namespace qsr
