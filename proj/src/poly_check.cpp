#include "qsr/poly_check.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include <json.hpp>

#include "qsr/definability.hpp"
#include "qsr/error.hpp"
#include "qsr/kernels.hpp"

namespace qsr {

std::string to_string(ThresholdOp op) { return op == ThresholdOp::PP ? "pp" : "dual-pp"; }

JointRealization JointRealization::from_tuples(std::span<const Rational> t1,
                                               std::span<const Rational> t2) {
  if (t1.size() != t2.size()) throw Error("tuples of different arity");
  std::vector<Rational> all(t1.begin(), t1.end());
  all.insert(all.end(), t2.begin(), t2.end());
  JointRealization jr;
  jr.first = weak_order_of(t1);
  jr.second = weak_order_of(t2);
  jr.combined = weak_order_of(all);
  auto distinct = all;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  jr.zero.index = static_cast<int>(
      std::count_if(distinct.begin(), distinct.end(), [](const Rational& q) { return q < 0; }));
  jr.zero.equal = std::binary_search(distinct.begin(), distinct.end(), Rational(0));
  return jr;
}

std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> JointRealization::render() const {
  const auto k = arity();
  auto value = [&](int c) -> std::int64_t {
    if (c < zero.index) return -(zero.index - c);
    return zero.equal ? c - zero.index : c - zero.index + 1;
  };
  std::vector<std::int64_t> a(k), b(k);
  for (std::size_t i = 0; i < k; ++i) {
    a[i] = value(combined.rank(i));
    b[i] = value(combined.rank(k + i));
  }
  return {a, b};
}

bool JointRealization::valid() const {
  const auto k = arity();
  if (second.arity() != k || combined.arity() != 2 * k || !combined.is_canonical()) return false;
  std::vector<std::size_t> lo(k), hi(k);
  std::iota(lo.begin(), lo.end(), 0);
  std::iota(hi.begin(), hi.end(), k);
  const int m = combined.classes();
  if (zero.index < 0 || zero.index > m || (zero.equal && zero.index == m)) return false;
  return combined.restrict(lo) == first && combined.restrict(hi) == second;
}

WeakOrder apply_op(ThresholdOp op, const JointRealization& jr) {
  const auto k = jr.arity();
  std::vector<std::int64_t> keys(k);
  for (std::size_t i = 0; i < k; ++i) {
    const bool negative = jr.combined.rank(i) < jr.zero.index;
    const bool take_first = (op == ThresholdOp::PP) == negative;
    keys[i] = jr.combined.rank(take_first ? i : k + i);
  }
  return WeakOrder::from_keys(keys);
}

std::vector<Rational> apply_op(ThresholdOp op, std::span<const Rational> t1,
                               std::span<const Rational> t2) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < t1.size(); ++i) {
    const bool negative = t1[i] < 0;
    out.push_back((op == ThresholdOp::PP) == negative ? t1[i] : t2[i]);
  }
  return out;
}

std::vector<WeakOrder> joint_orders(const WeakOrder& a, const WeakOrder& b) {
  const auto k = a.arity();
  const int ca = a.classes(), cb = b.classes();
  std::vector<std::uint8_t> class_rank_a(ca), class_rank_b(cb);
  std::vector<WeakOrder> out;
  std::function<void(int, int, int)> rec = [&](int i, int j, int r) {
    if (i == ca && j == cb) {
      std::vector<std::uint8_t> ranks(2 * k);
      for (std::size_t s = 0; s < k; ++s) {
        ranks[s] = class_rank_a[a.rank(s)];
        ranks[k + s] = class_rank_b[b.rank(s)];
      }
      out.push_back(WeakOrder::from_ranks(std::move(ranks)));
      return;
    }
    if (i < ca) {
      class_rank_a[i] = static_cast<std::uint8_t>(r);
      rec(i + 1, j, r + 1);
    }
    if (j < cb) {
      class_rank_b[j] = static_cast<std::uint8_t>(r);
      rec(i, j + 1, r + 1);
    }
    if (i < ca && j < cb) {
      class_rank_a[i] = class_rank_b[j] = static_cast<std::uint8_t>(r);
      rec(i + 1, j + 1, r + 1);
    }
  };
  rec(0, 0, 0);
  return out;
}

namespace {

std::int64_t magnitude(const Violation& v) {
  std::int64_t s = 0;
  for (auto x : v.t1) s += x < 0 ? -x : x;
  for (auto x : v.t2) s += x < 0 ? -x : x;
  return s;
}

// Calls f(realization, result) for every violating realization with first tuple m1.
template <class F>
void scan_row(const PointRelation& R, ThresholdOp op, const WeakOrder& m1, F&& f) {
  for (const auto& m2 : R.models()) {
    for (auto& combined : joint_orders(m1, m2)) {
      const int m = combined.classes();
      JointRealization jr{m1, m2, std::move(combined), {}};
      for (int cut = 0; cut <= m; ++cut) {
        jr.zero = {cut, false};
        const auto res = apply_op(op, jr);
        if (!R.contains(res)) {
          if (!f(jr, res)) return;
        }
      }
    }
  }
}

Violation finish(ThresholdOp op, const JointRealization& jr) {
  Violation v;
  auto [t1, t2] = jr.render();
  std::vector<Rational> q1(t1.begin(), t1.end()), q2(t2.begin(), t2.end());
  for (const auto& q : apply_op(op, q1, q2)) v.result.push_back(q.numerator());
  v.t1 = std::move(t1);
  v.t2 = std::move(t2);
  v.realization = jr;
  return v;
}

PointRelation single_sort_view(const PointRelation& R, std::size_t cap) {
  if (R.arity() > cap) {
    throw CapExceeded("arity " + std::to_string(R.arity()) + " exceeds the preservation cap " +
                      std::to_string(cap));
  }
  return R.single_sort() ? R : R.flatten();
}

}  // namespace

bool violation_less(const Violation& a, const Violation& b) {
  const auto ka = a.realization.combined.classes(), kb = b.realization.combined.classes();
  if (ka != kb) return ka < kb;
  const auto ma = magnitude(a), mb = magnitude(b);
  if (ma != mb) return ma < mb;
  if (a.t1 != b.t1) return a.t1 < b.t1;
  return a.t2 < b.t2;
}

std::optional<Violation> least_violation_from(const PointRelation& R, ThresholdOp op,
                                              std::size_t row) {
  std::optional<Violation> best;
  scan_row(R, op, R.models().at(row), [&](const JointRealization& jr, const WeakOrder&) {
    auto v = finish(op, jr);
    if (!best || violation_less(v, *best)) best = std::move(v);
    return true;
  });
  return best;
}

Preservation preserved_by(const PointRelation& R, ThresholdOp op, std::size_t cap) {
  const auto S = single_sort_view(R, cap);
  Preservation p;
  p.violation = kernels::preservation_omp(S, op);
  p.preserved = !p.violation.has_value();
  return p;
}

std::vector<Violation> violations(const PointRelation& R, ThresholdOp op, std::size_t limit,
                                  std::size_t cap) {
  const auto S = single_sort_view(R, cap);
  std::vector<Violation> out;
  for (const auto& m1 : S.models()) {
    if (out.size() >= limit) break;
    scan_row(S, op, m1, [&](const JointRealization& jr, const WeakOrder&) {
      out.push_back(finish(op, jr));
      return out.size() < limit;
    });
  }
  return out;
}

PointRelation implication_relation() {
  std::vector<WeakOrder> models;
  for (auto& w : enumerate_weak_orders(4)) {
    if (!w.equal(0, 1) || w.equal(2, 3)) models.push_back(std::move(w));
  }
  return PointRelation(4, {0, 0, 0, 0}, std::move(models));
}

bool is_implication(const PointRelation& R) {
  if (R.arity() != 4 || !R.single_sort()) return false;
  static const auto imp = implication_relation();
  if (R.size() != imp.size()) return false;
  std::vector<int> perm{0, 1, 2, 3};
  do {
    std::vector<WeakOrder> models;
    for (const auto& w : R.models()) {
      std::vector<std::uint8_t> ranks(4);
      for (int i = 0; i < 4; ++i) ranks[i] = w.ranks()[perm[i]];
      models.push_back(WeakOrder::from_ranks(std::move(ranks)));
    }
    if (PointRelation(4, {0, 0, 0, 0}, std::move(models)) == imp) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

std::string tractability_report(const std::vector<LanguageEntry>& language) {
  using nlohmann::json;
  json rels = json::array();
  bool all_ord = true, all_ll = true, all_dual = true, has_imp = false;
  for (const auto& e : language) {
    json r;
    r["id"] = e.id;
    r["arity"] = e.relation.arity();
    r["models"] = e.relation.size();
    if (e.syntax) {
      r["syntactic"] = {{"ord_horn", is_ord_horn(*e.syntax)},
                        {"ll_horn", is_ll_horn(*e.syntax)},
                        {"dual_ll_horn", is_dual_ll_horn(*e.syntax)}};
    } else {
      r["syntactic"] = nullptr;
    }
    const bool ord = ordhorn_definable(e.relation).definable();
    const bool ll = llhorn_definable(e.relation).definable();
    const bool dual = dual_llhorn_definable(e.relation).definable();
    all_ord = all_ord && ord;
    all_ll = all_ll && ll;
    all_dual = all_dual && dual;
    r["semantic"] = {{"ord_horn", ord}, {"ll_horn", ll}, {"dual_ll_horn", dual}};
    for (auto op : {ThresholdOp::PP, ThresholdOp::DualPP}) {
      const auto p = preserved_by(e.relation, op);
      json j{{"preserved", p.preserved}};
      if (p.violation) {
        j["witness"] = {{"t1", p.violation->t1},
                        {"t2", p.violation->t2},
                        {"result", p.violation->result}};
      }
      r[op == ThresholdOp::PP ? "pp" : "dual_pp"] = j;
    }
    const bool imp = is_implication(e.relation);
    has_imp = has_imp || imp;
    r["implication"] = imp;
    if (imp) {
      r["note"] =
          "x=y -> u=v: violated by pp and dual-pp; among the maximal tractable classes only "
          "ll-Horn and dual-ll-Horn contain it";
    }
    rels.push_back(std::move(r));
  }
  json classes = json::array();
  if (all_ord) classes.push_back("ORD-Horn");
  if (all_ll) classes.push_back("ll-Horn");
  if (all_dual) classes.push_back("dual-ll-Horn");
  json out;
  out["relations"] = std::move(rels);
  out["language_classes"] = classes;
  if (has_imp && !all_ll && !all_dual) {
    out["verdict"] = "np-hard";
    out["evidence"] =
        "contains x=y -> u=v, whose only maximal tractable classes are ll-Horn and "
        "dual-ll-Horn, and the language lies in neither";
  } else if (!classes.empty()) {
    out["verdict"] = "tractable";
    out["evidence"] = "every relation is " + classes.front().get<std::string>() + "-definable";
  } else {
    out["verdict"] = "unknown";
    out["evidence"] = "no encoded rule applies";
  }
  return out.dump(2);
}

}  // namespace qsr
