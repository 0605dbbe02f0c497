#include "qsr/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <numeric>

#include <json.hpp>

#include "qsr/definability.hpp"
#include "qsr/error.hpp"
#include "qsr/ordhorn_solver.hpp"

namespace qsr {

namespace {

constexpr const char* kVersion = "0.1.0";

// Domain of one calculus variable as a relation over its own slots.
PointRelation element_domain(Structure s) {
  const auto sorts = slot_sorts(s);
  std::vector<WeakOrder> models;
  for (auto& w : enumerate_weak_orders(sorts)) {
    std::vector<Rational> v(w.ranks().begin(), w.ranks().end());
    if (element_from_slots(s, v)) models.push_back(std::move(w));
  }
  return PointRelation(sorts.size(), sorts, std::move(models));
}

// ----- brute force ---------------------------------------------------------

// Slots are placed one at a time into per-sort ordered class lists. Constants
// become pinned pseudo-slots placed first in increasing order.
class BruteForce {
 public:
  BruteForce(const SlotProblem& p) : n_(p.slots()), sorts_(p.sorts) {
    if (sorts_.empty()) sorts_.assign(n_, 0);
    constraints_ = p.constraints;
    std::vector<Rational> values;
    for (const auto& [v, q] : p.constants) values.push_back(q);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (const auto& q : values) {
      anchors_.push_back(q);
      sorts_.push_back(0);
    }
    total_ = n_ + anchors_.size();
    const std::vector<OrderAtom> eq{OrderAtom::make(0, OrderOp::Eq, 1)};
    const std::vector<OrderAtom> lt{OrderAtom::make(0, OrderOp::Lt, 1)};
    for (const auto& [v, q] : p.constants) {
      if (sorts_[v] != 0) throw Error("constants are only supported on single-sort instances");
      const auto a = std::lower_bound(values.begin(), values.end(), q) - values.begin();
      constraints_.push_back({{v, static_cast<int>(n_ + a)},
                              PointRelation::of_atoms(2, eq),
                              std::nullopt});
    }
    for (std::size_t a = 1; a < anchors_.size(); ++a) {
      constraints_.push_back({{static_cast<int>(n_ + a - 1), static_cast<int>(n_ + a)},
                              PointRelation::of_atoms(2, lt),
                              std::nullopt});
    }
    for (std::size_t a = 0; a < anchors_.size(); ++a) order_.push_back(n_ + a);
    for (std::size_t s = 0; s < n_; ++s) order_.push_back(s);
    std::vector<std::size_t> pos(total_);
    for (std::size_t i = 0; i < total_; ++i) pos[order_[i]] = i;
    ready_.resize(total_);
    for (const auto& con : constraints_) {
      if (con.scope.empty()) {
        ready_[0].push_back(checks_.size());
        checks_.push_back(con);
        continue;
      }
      // the projection onto the slots placed so far prunes before the scope is complete
      std::vector<std::size_t> idx(con.scope.size());
      std::iota(idx.begin(), idx.end(), 0);
      std::sort(idx.begin(), idx.end(),
                [&](auto a, auto b) { return pos[con.scope[a]] < pos[con.scope[b]]; });
      for (std::size_t j = 2; j < idx.size(); ++j) {
        std::vector<std::size_t> part(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(j));
        PointConstraint pc;
        std::vector<int> sub_sorts;
        for (auto i : part) {
          pc.scope.push_back(con.scope[i]);
          sub_sorts.push_back(con.relation.sorts().empty() ? 0 : con.relation.sorts()[i]);
        }
        pc.relation = PointRelation(j, sub_sorts, con.relation.project(part));
        std::map<int, std::size_t> per_sort;
        for (int so : sub_sorts) ++per_sort[so];
        std::uint64_t all = 1;
        for (const auto& [so, k] : per_sort) all *= ordered_bell(k);
        if (pc.relation.size() == all) continue;
        ready_[pos[pc.scope.back()]].push_back(checks_.size());
        checks_.push_back(std::move(pc));
      }
      ready_[pos[con.scope[idx.back()]]].push_back(checks_.size());
      checks_.push_back(con);
    }
    int max_sort = 0;
    for (int s : sorts_) max_sort = std::max(max_sort, s);
    sort_count_ = static_cast<std::size_t>(max_sort) + 1;
  }

  std::size_t total_slots() const { return total_; }

  struct State {
    std::vector<std::vector<std::vector<int>>> classes;  // per sort, ordered
    std::vector<int> class_of;                            // slot -> index in its sort list
  };

  State empty_state() const {
    State st;
    st.classes.resize(sort_count_);
    st.class_of.assign(total_, -1);
    return st;
  }

  // Applies choice c for the slot at `depth`; returns false when it does not exist.
  bool apply(State& st, std::size_t depth, int c) const {
    const int slot = static_cast<int>(order_[depth]);
    auto& list = st.classes[sorts_[slot]];
    const int m = static_cast<int>(list.size());
    if (c > 2 * m) return false;
    if (c % 2 == 0) {
      list.insert(list.begin() + c / 2, std::vector<int>{slot});
    } else {
      list[(c - 1) / 2].push_back(slot);
    }
    reindex(st, sorts_[slot]);
    return true;
  }

  void undo(State& st, std::size_t depth, int c) const {
    const int slot = static_cast<int>(order_[depth]);
    auto& list = st.classes[sorts_[slot]];
    if (c % 2 == 0) {
      list.erase(list.begin() + c / 2);
    } else {
      list[(c - 1) / 2].pop_back();
    }
    st.class_of[slot] = -1;
    reindex(st, sorts_[slot]);
  }

  bool check(const State& st, std::size_t depth) const {
    for (auto c : ready_[depth]) {
      const auto& con = checks_[c];
      std::vector<Rational> v;
      v.reserve(con.scope.size());
      for (int s : con.scope) v.emplace_back(st.class_of[s]);
      if (!con.relation.contains(v)) return false;
    }
    return true;
  }

  bool dfs(State& st, std::size_t depth, std::uint64_t& nodes) const {
    ++nodes;
    if (depth == total_) return true;
    for (int c = 0;; ++c) {
      if (!apply(st, depth, c)) break;
      if (check(st, depth) && dfs(st, depth + 1, nodes)) return true;
      undo(st, depth, c);
    }
    return false;
  }

  // All consistent choice prefixes of the given length, in DFS order.
  std::vector<std::vector<int>> prefixes(std::size_t len, std::uint64_t& nodes) const {
    std::vector<std::vector<int>> out;
    auto st = empty_state();
    std::vector<int> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t depth) {
      ++nodes;
      if (depth == len) {
        out.push_back(cur);
        return;
      }
      for (int c = 0;; ++c) {
        if (!apply(st, depth, c)) break;
        if (check(st, depth)) {
          cur.push_back(c);
          rec(depth + 1);
          cur.pop_back();
        }
        undo(st, depth, c);
      }
    };
    rec(0);
    return out;
  }

  std::vector<Rational> values(const State& st) const {
    std::vector<Rational> out(n_);
    for (std::size_t s = 0; s < sort_count_; ++s) {
      const auto& list = st.classes[s];
      std::vector<std::optional<Rational>> val(list.size());
      std::vector<std::size_t> anchored;
      for (std::size_t i = 0; i < list.size(); ++i) {
        for (int slot : list[i]) {
          if (static_cast<std::size_t>(slot) >= n_) val[i] = anchors_[slot - n_];
        }
        if (val[i]) anchored.push_back(i);
      }
      if (anchored.empty()) {
        for (std::size_t i = 0; i < list.size(); ++i) val[i] = Rational(static_cast<int64_t>(i));
      } else {
        for (std::size_t i = 0; i < anchored.front(); ++i) {
          val[i] = *val[anchored.front()] - static_cast<int64_t>(anchored.front() - i);
        }
        for (std::size_t i = anchored.back() + 1; i < list.size(); ++i) {
          val[i] = *val[anchored.back()] + static_cast<int64_t>(i - anchored.back());
        }
        for (std::size_t a = 1; a < anchored.size(); ++a) {
          const auto lo = anchored[a - 1], hi = anchored[a];
          const Rational step = (*val[hi] - *val[lo]) / static_cast<int64_t>(hi - lo);
          for (std::size_t i = lo + 1; i < hi; ++i) {
            val[i] = *val[lo] + step * static_cast<int64_t>(i - lo);
          }
        }
      }
      for (std::size_t i = 0; i < list.size(); ++i) {
        for (int slot : list[i]) {
          if (static_cast<std::size_t>(slot) < n_) out[slot] = *val[i];
        }
      }
    }
    return out;
  }

 private:
  static void reindex_list(State& st, const std::vector<std::vector<int>>& list) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      for (int s : list[i]) st.class_of[s] = static_cast<int>(i);
    }
  }
  void reindex(State& st, int sort) const { reindex_list(st, st.classes[sort]); }

  std::size_t n_;
  std::vector<int> sorts_;
  std::vector<Rational> anchors_;
  std::size_t total_ = 0;
  std::size_t sort_count_ = 1;
  std::vector<PointConstraint> constraints_;
  std::vector<PointConstraint> checks_;  // constraints and their prefix projections
  std::vector<std::size_t> order_;
  std::vector<std::vector<std::size_t>> ready_;
};

// ----- ORD-Horn definitions, cached per relation --------------------------

class DefinitionCache {
 public:
  const Definability& get(const PointRelation& r) {
    for (const auto& [rel, def] : entries_) {
      if (rel == r) return def;
    }
    entries_.emplace_back(r, ordhorn_definable(r));
    return entries_.back().second;
  }

 private:
  std::vector<std::pair<PointRelation, Definability>> entries_;
};

// ----- witnesses -------------------------------------------------------------

Witness witness_from_slots(const QualInstance& q, std::span<const Rational> values) {
  const auto k = slots_per_element(q.calculus);
  Witness w;
  for (std::size_t i = 0; i < q.variables.size(); ++i) {
    auto e = element_from_slots(q.calculus, values.subspan(i * k, k));
    if (!e) throw Error("internal: slot values leave the domain of " + q.variables[i]);
    w.emplace_back(q.variables[i], *e);
  }
  return w;
}

Witness witness_from_slots(const PointInstance& p, std::span<const Rational> values) {
  Witness w;
  for (std::size_t i = 0; i < p.variables.size(); ++i) w.emplace_back(p.variables[i], values[i]);
  return w;
}

const Element* lookup(const Witness& w, std::string_view name) {
  for (const auto& [n, e] : w) {
    if (n == name) return &e;
  }
  return nullptr;
}

std::optional<std::vector<Rational>> run_slots(const SlotProblem& sp, const std::string& method,
                                               const SolveOptions& opt, SolveStats& stats,
                                               std::string& used) {
  if (method == "bruteforce") {
    used = "bruteforce";
    return bruteforce_slots(sp, opt.max_slots, opt.parallel, stats);
  }
  if (method == "backtracking") {
    used = "backtracking";
    return backtracking_slots(sp, stats);
  }
  if (method == "ordhorn") {
    used = "ordhorn";
    return ordhorn_slots(sp, stats);
  }
  if (method == "auto") {
    if (all_ordhorn(sp)) {
      used = "auto:ordhorn";
      return ordhorn_slots(sp, stats);
    }
    used = "auto:backtracking";
    return backtracking_slots(sp, stats);
  }
  throw InapplicableStrategy("unknown method '" + method + "'");
}

}  // namespace

SlotProblem slot_problem(const QualInstance& inst) {
  const auto s = inst.calculus;
  const auto k = slots_per_element(s);
  const auto ss = slot_sorts(s);
  SlotProblem p;
  for (const auto& v : inst.variables) {
    for (const auto& n : slot_names(s, v)) p.names.push_back(n);
    p.sorts.insert(p.sorts.end(), ss.begin(), ss.end());
  }
  auto slots_of = [&](const std::string& v) {
    const int i = inst.find(v);
    if (i < 0) throw Error("undeclared variable " + v);
    std::vector<int> out(k);
    std::iota(out.begin(), out.end(), static_cast<int>(i * k));
    return out;
  };
  auto add = [&](PointConstraint c) {
    for (auto& part : factor_by_sort(c, p.sorts)) p.constraints.push_back(std::move(part));
  };
  const auto domain = element_domain(s);
  for (const auto& v : inst.variables) add({slots_of(v), domain, std::nullopt});
  for (const auto& v : inst.forw) {
    if (s.kind != StructureKind::DIA) throw StructureMismatch("forw outside DIA");
    const std::vector<OrderAtom> lt{OrderAtom::make(0, OrderOp::Lt, 1)};
    add({slots_of(v), PointRelation::of_atoms(2, lt), std::nullopt});
  }
  for (const auto& c : inst.constraints) {
    if (!(c.relation.calculus() == s)) throw CalculusMismatch("constraint over the wrong calculus");
    auto scope = slots_of(c.x);
    const auto y = slots_of(c.y);
    scope.insert(scope.end(), y.begin(), y.end());
    add({std::move(scope), relation_of(c.relation), std::nullopt});
  }
  return p;
}

SlotProblem slot_problem(const PointInstance& inst) {
  SlotProblem p;
  p.names = inst.variables;
  p.sorts = inst.sorts.empty() ? std::vector<int>(inst.variables.size(), 0) : inst.sorts;
  p.constraints = inst.constraints;
  p.constants = inst.constants;
  return p;
}

std::optional<std::vector<Rational>> bruteforce_slots(const SlotProblem& p, std::size_t cap,
                                                      bool parallel, SolveStats& stats) {
  const BruteForce bf(p);
  if (bf.total_slots() > cap) {
    throw CapExceeded("brute force over " + std::to_string(bf.total_slots()) +
                      " slots exceeds the cap of " + std::to_string(cap));
  }
  if (!parallel) {
    auto st = bf.empty_state();
    std::uint64_t nodes = 0;
    const bool ok = bf.dfs(st, 0, nodes);
    stats.nodes += nodes;
    if (!ok) return std::nullopt;
    return bf.values(st);
  }
  std::uint64_t nodes = 0;
  const auto prefixes = bf.prefixes(std::min<std::size_t>(3, bf.total_slots()), nodes);
  const auto count = static_cast<std::int64_t>(prefixes.size());
  std::atomic<std::int64_t> best{count};
  std::vector<std::optional<std::vector<Rational>>> found(prefixes.size());
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : nodes)
  for (std::int64_t i = 0; i < count; ++i) {
    if (i > best.load()) continue;
    auto st = bf.empty_state();
    for (std::size_t d = 0; d < prefixes[i].size(); ++d) bf.apply(st, d, prefixes[i][d]);
    if (bf.dfs(st, prefixes[i].size(), nodes)) {
      found[i] = bf.values(st);
      auto cur = best.load();
      while (i < cur && !best.compare_exchange_weak(cur, i)) {
      }
    }
  }
  stats.nodes += nodes;
  const auto b = best.load();
  if (b == count) return std::nullopt;
  return found[b];
}

std::optional<std::vector<Rational>> backtracking_slots(const SlotProblem& p, SolveStats& stats) {
  const auto n = p.slots();
  std::vector<int> degree(n, 0);
  for (const auto& c : p.constraints) {
    for (int s : c.scope) ++degree[s];
  }
  std::vector<std::size_t> order(p.constraints.size());
  std::iota(order.begin(), order.end(), 0);
  auto weight = [&](std::size_t i) {
    int d = 0;
    for (int s : p.constraints[i].scope) d += degree[s];
    return d;
  };
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    const auto sa = p.constraints[a].relation.size(), sb = p.constraints[b].relation.size();
    if (sa != sb) return sa < sb;
    return weight(a) > weight(b);
  });

  ConjunctiveStore base(static_cast<int>(n));
  for (const auto& [v, q] : p.constants) base.fix(v, q);
  if (!base.consistent()) return std::nullopt;

  std::optional<std::vector<Rational>> result;
  std::function<bool(std::size_t, const ConjunctiveStore&)> dfs =
      [&](std::size_t depth, const ConjunctiveStore& store) -> bool {
    ++stats.nodes;
    if (depth == order.size()) {
      result = store.model();
      return true;
    }
    const auto& c = p.constraints[order[depth]];
    for (const auto& w : c.relation.models()) {
      ConjunctiveStore next = store;
      next.add(order_atoms(w, c.scope, c.relation.sorts()));
      if (next.consistent() && dfs(depth + 1, next)) return true;
      ++stats.backtracks;
    }
    return false;
  };
  dfs(0, base);
  return result;
}

bool all_ordhorn(const SlotProblem& p) {
  DefinitionCache cache;
  for (const auto& c : p.constraints) {
    if (c.clause && to_ord(*c.clause)) continue;
    if (!cache.get(c.relation).definable()) return false;
  }
  return true;
}

std::optional<std::vector<Rational>> ordhorn_slots(const SlotProblem& p, SolveStats& stats) {
  ClauseSet cs;
  cs.variables = p.names;
  cs.sorts = p.sorts;
  DefinitionCache cache;
  for (const auto& c : p.constraints) {
    if (c.clause && to_ord(*c.clause)) {
      cs.clauses.push_back(*to_ord(*c.clause));
      continue;
    }
    const auto& def = cache.get(c.relation);
    if (!def.definable()) {
      throw InapplicableStrategy("a constraint is not ORD-Horn definable");
    }
    for (const auto& clause : def.definition->clauses) {
      cs.clauses.push_back(remap_clause(clause, c.scope));
    }
  }
  const auto r = ordhorn_satisfiable(cs, p.constants);
  stats.firings += r.firings;
  stats.backtracks += r.backtracks;
  if (!r.satisfiable) return std::nullopt;
  return r.model;
}

SolveReport solve(const Instance& inst, const SolveOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  SolveReport rep;
  rep.seed = opt.seed;

  if (opt.method.rfind("translate:", 0) == 0) {
    const auto& I = catalog().interpretation(opt.method.substr(10));
    SolveOptions sub = opt;
    sub.method = "auto";
    if (const auto* q = std::get_if<QualInstance>(&inst)) {
      const auto point = translate_instance(*q, I);
      const auto r = solve(Instance{point}, sub);
      rep.satisfiable = r.satisfiable;
      rep.stats = r.stats;
      if (r.witness) {
        Witness w;
        for (const auto& v : q->variables) {
          std::vector<Element> args;
          for (const auto& n : expanded_names(I.target, I.dimension, v)) {
            args.push_back(*lookup(*r.witness, n));
          }
          auto e = I.coordinate_map(args);
          if (!e) throw Error("internal: coordinate map undefined on a translated witness");
          w.emplace_back(v, *e);
        }
        rep.witness = std::move(w);
      }
      rep.strategy = opt.method + "/" + r.strategy;
    } else {
      const auto& p = std::get<PointInstance>(inst);
      const auto qual = translate_instance(p, I);
      const auto r = solve(Instance{qual}, sub);
      rep.satisfiable = r.satisfiable;
      rep.stats = r.stats;
      if (r.witness) {
        Witness w;
        for (const auto& v : p.variables) {
          std::vector<Element> args;
          for (const auto& n : expanded_names(Structure::point(), I.dimension, v)) {
            args.push_back(*lookup(*r.witness, n));
          }
          auto e = I.coordinate_map(args);
          if (!e) throw Error("internal: coordinate map undefined on a translated witness");
          w.emplace_back(v, *e);
        }
        rep.witness = std::move(w);
      }
      rep.strategy = opt.method + "/" + r.strategy;
    }
  } else {
    const auto sp = std::visit([](const auto& x) { return slot_problem(x); }, inst);
    const auto values = run_slots(sp, opt.method, opt, rep.stats, rep.strategy);
    rep.satisfiable = values.has_value();
    if (values) {
      rep.witness = std::visit([&](const auto& x) { return witness_from_slots(x, *values); }, inst);
    }
  }
  if (rep.witness && !verify_witness(inst, *rep.witness)) {
    throw Error("internal: witness failed verification (" + rep.strategy + ")");
  }
  rep.stats.ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

bool verify_witness(const Instance& inst, const Witness& w) {
  if (const auto* q = std::get_if<QualInstance>(&inst)) {
    for (const auto& v : q->variables) {
      const auto* e = lookup(w, v);
      if (!e || !element_in(q->calculus, *e)) return false;
    }
    for (const auto& v : q->forw) {
      const auto* d = std::get_if<DirectedInterval>(lookup(w, v));
      if (!d || !d->forward()) return false;
    }
    for (const auto& c : q->constraints) {
      const auto* a = lookup(w, c.x);
      const auto* b = lookup(w, c.y);
      const auto basics = c.relation.basics();
      if (!std::any_of(basics.begin(), basics.end(),
                       [&](const BasicCode& code) { return holds(code, *a, *b); })) {
        return false;
      }
    }
    return true;
  }
  const auto& p = std::get<PointInstance>(inst);
  std::vector<Rational> val;
  for (const auto& v : p.variables) {
    const auto* e = lookup(w, v);
    if (!e || !std::holds_alternative<Rational>(*e)) return false;
    val.push_back(std::get<Rational>(*e));
  }
  for (const auto& [v, q] : p.constants) {
    if (val[v] != q) return false;
  }
  for (const auto& c : p.constraints) {
    std::vector<Rational> t;
    for (int s : c.scope) t.push_back(val[s]);
    if (!c.relation.contains(t)) return false;
  }
  return true;
}

std::string to_json(const SolveReport& r) {
  nlohmann::ordered_json j;
  j["satisfiable"] = r.satisfiable;
  if (r.witness) {
    nlohmann::ordered_json w = nlohmann::ordered_json::object();
    for (const auto& [n, e] : *r.witness) w[n] = to_string(e);
    j["witness"] = w;
  }
  j["strategy"] = r.strategy;
  j["stats"] = {{"nodes", r.stats.nodes}, {"firings", r.stats.firings}, {"ms", r.stats.ms}};
  j["seed"] = r.seed;
  j["version"] = kVersion;
  return j.dump(2);
}

}  // namespace qsr
