#include "qsr/order_store.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace qsr {

std::string_view op_symbol(OrderOp op) {
  switch (op) {
    case OrderOp::Lt: return "<";
    case OrderOp::Le: return "<=";
    case OrderOp::Eq: return "=";
    case OrderOp::Ne: return "!=";
  }
  return "?";
}

struct ConjunctiveStore::Analysis {
  int nodes = 0;
  std::vector<int> component;              // node -> SCC id
  std::vector<std::vector<int>> dag;       // SCC -> successors
  std::vector<std::optional<Rational>> fixed_value;  // SCC -> constant
  int components = 0;
};

void ConjunctiveStore::add(const OrderAtom& atom) {
  for (const auto* t : {&atom.lhs, &atom.rhs}) {
    if (t->is_var() && t->var_index() >= variables_) variables_ = t->var_index() + 1;
  }
  atoms_.push_back(atom);
}

std::optional<ConjunctiveStore::Analysis> ConjunctiveStore::analyze() const {
  // Node ids: variables first, then distinct constants in ascending order.
  std::vector<Rational> constants;
  for (const auto& a : atoms_) {
    for (const auto* t : {&a.lhs, &a.rhs}) {
      if (!t->is_var()) constants.push_back(t->constant_value());
    }
  }
  std::sort(constants.begin(), constants.end());
  constants.erase(std::unique(constants.begin(), constants.end()), constants.end());
  const int n = variables_ + static_cast<int>(constants.size());
  auto node_of = [&](const Term& t) {
    if (t.is_var()) return t.var_index();
    return variables_ + static_cast<int>(std::lower_bound(constants.begin(), constants.end(),
                                                          t.constant_value()) -
                                         constants.begin());
  };

  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& a : atoms_) {
    if (a.op == OrderOp::Eq) parent[find(node_of(a.lhs))] = find(node_of(a.rhs));
  }

  struct Edge {
    int from, to;
    bool strict;
  };
  std::vector<Edge> edges;
  for (const auto& a : atoms_) {
    if (a.op == OrderOp::Lt || a.op == OrderOp::Le) {
      edges.push_back({find(node_of(a.lhs)), find(node_of(a.rhs)), a.op == OrderOp::Lt});
    }
  }
  for (std::size_t i = 1; i < constants.size(); ++i) {
    edges.push_back({find(variables_ + static_cast<int>(i) - 1),
                     find(variables_ + static_cast<int>(i)), true});
  }

  // Tarjan over union-find roots.
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : edges) adj[e.from].push_back(e.to);
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1), stack;
  std::vector<bool> on_stack(n, false);
  int counter = 0, components = 0;
  std::function<void(int)> strongconnect = [&](int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (int w : adj[v]) {
      if (index[w] < 0) {
        strongconnect(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = components;
      } while (w != v);
      ++components;
    }
  };
  for (int v = 0; v < n; ++v) {
    if (find(v) == v && index[v] < 0) strongconnect(v);
  }

  Analysis an;
  an.nodes = n;
  an.components = components;
  an.component.resize(n);
  for (int v = 0; v < n; ++v) an.component[v] = comp[find(v)];

  for (const auto& e : edges) {
    if (e.strict && comp[e.from] == comp[e.to]) return std::nullopt;
  }
  for (const auto& a : atoms_) {
    if (a.op == OrderOp::Ne &&
        an.component[node_of(a.lhs)] == an.component[node_of(a.rhs)]) {
      return std::nullopt;
    }
  }
  an.fixed_value.assign(components, std::nullopt);
  for (std::size_t i = 0; i < constants.size(); ++i) {
    auto& slot = an.fixed_value[an.component[variables_ + static_cast<int>(i)]];
    if (slot && *slot != constants[i]) return std::nullopt;
    slot = constants[i];
  }
  an.dag.assign(components, {});
  for (const auto& e : edges) {
    if (comp[e.from] != comp[e.to]) an.dag[comp[e.from]].push_back(comp[e.to]);
  }
  return an;
}

bool ConjunctiveStore::consistent() const { return analyze().has_value(); }

std::optional<std::vector<int>> ConjunctiveStore::equality_classes() const {
  auto an = analyze();
  if (!an) return std::nullopt;
  return std::vector<int>(an->component.begin(), an->component.begin() + variables_);
}

std::optional<std::vector<Rational>> ConjunctiveStore::model() const {
  auto an = analyze();
  if (!an) return std::nullopt;
  const int c = an->components;

  // Kahn's algorithm with smallest-id tie breaking for determinism.
  std::vector<int> indegree(c, 0);
  for (int u = 0; u < c; ++u) {
    for (int v : an->dag[u]) ++indegree[v];
  }
  std::vector<int> ready, order;
  for (int u = 0; u < c; ++u) {
    if (indegree[u] == 0) ready.push_back(u);
  }
  while (!ready.empty()) {
    auto it = std::min_element(ready.begin(), ready.end());
    int u = *it;
    ready.erase(it);
    order.push_back(u);
    for (int v : an->dag[u]) {
      if (--indegree[v] == 0) ready.push_back(v);
    }
  }

  // Components between consecutive constants are spread evenly in the gap.
  std::vector<Rational> value(c);
  std::vector<std::size_t> anchors;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (an->fixed_value[order[i]]) anchors.push_back(i);
  }
  if (anchors.empty()) {
    for (std::size_t i = 0; i < order.size(); ++i) value[order[i]] = Rational(static_cast<std::int64_t>(i));
  } else {
    for (auto i : anchors) value[order[i]] = *an->fixed_value[order[i]];
    const auto first = anchors.front();
    for (std::size_t i = 0; i < first; ++i) {
      value[order[i]] = value[order[first]] - Rational(static_cast<std::int64_t>(first - i));
    }
    const auto last = anchors.back();
    for (std::size_t i = last + 1; i < order.size(); ++i) {
      value[order[i]] = value[order[last]] + Rational(static_cast<std::int64_t>(i - last));
    }
    for (std::size_t a = 0; a + 1 < anchors.size(); ++a) {
      const auto lo = anchors[a], hi = anchors[a + 1];
      const Rational step = (value[order[hi]] - value[order[lo]]) /
                            Rational(static_cast<std::int64_t>(hi - lo));
      for (std::size_t i = lo + 1; i < hi; ++i) {
        value[order[i]] = value[order[lo]] + step * Rational(static_cast<std::int64_t>(i - lo));
      }
    }
  }

  std::vector<Rational> out(variables_);
  for (int v = 0; v < variables_; ++v) out[v] = value[an->component[v]];
  return out;
}

bool conjunction_satisfiable(std::span<const OrderAtom> atoms,
                             const std::map<int, Rational>& fixed) {
  ConjunctiveStore store;
  store.add(atoms);
  for (const auto& [v, q] : fixed) store.fix(v, q);
  return store.consistent();
}

}  // namespace qsr
