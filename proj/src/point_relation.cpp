#include "qsr/point_relation.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "qsr/error.hpp"

namespace qsr {

namespace {

bool atoms_hold(std::span<const OrderAtom> atoms, const WeakOrder& w) {
  for (const auto& a : atoms) {
    const int x = w.rank(a.lhs.var_index());
    const int y = w.rank(a.rhs.var_index());
    switch (a.op) {
      case OrderOp::Lt: if (!(x < y)) return false; break;
      case OrderOp::Le: if (!(x <= y)) return false; break;
      case OrderOp::Eq: if (x != y) return false; break;
      case OrderOp::Ne: if (x == y) return false; break;
    }
  }
  return true;
}

void normalize(std::vector<WeakOrder>& models) {
  std::sort(models.begin(), models.end());
  models.erase(std::unique(models.begin(), models.end()), models.end());
}

}  // namespace

PointRelation::PointRelation(std::size_t arity, std::vector<int> sorts,
                             std::vector<WeakOrder> models)
    : arity_(arity), sorts_(std::move(sorts)), models_(std::move(models)) {
  if (sorts_.empty()) sorts_.assign(arity_, 0);
  if (sorts_.size() != arity_) throw Error("sort vector does not match arity");
  for (const auto& w : models_) {
    if (w.arity() != arity_ || !w.is_canonical(sorts_)) {
      throw Error("non-canonical model in point relation");
    }
  }
  normalize(models_);
}

PointRelation PointRelation::full(std::size_t arity, std::vector<int> sorts, std::size_t cap) {
  if (sorts.empty()) sorts.assign(arity, 0);
  auto models = enumerate_weak_orders(sorts, cap);
  return PointRelation(arity, std::move(sorts), std::move(models));
}

PointRelation PointRelation::empty(std::size_t arity, std::vector<int> sorts) {
  return PointRelation(arity, std::move(sorts), {});
}

PointRelation PointRelation::of_atoms(std::size_t arity, std::span<const OrderAtom> atoms,
                                      std::vector<int> sorts, std::size_t cap) {
  if (sorts.empty()) sorts.assign(arity, 0);
  std::vector<WeakOrder> models;
  for (auto& w : enumerate_weak_orders(sorts, cap)) {
    if (atoms_hold(atoms, w)) models.push_back(std::move(w));
  }
  return PointRelation(arity, std::move(sorts), std::move(models));
}

bool PointRelation::single_sort() const {
  return std::all_of(sorts_.begin(), sorts_.end(), [&](int s) { return s == sorts_.front(); });
}

bool PointRelation::contains(const WeakOrder& w) const {
  return std::binary_search(models_.begin(), models_.end(), w);
}

bool PointRelation::contains(std::span<const Rational> tuple) const {
  if (tuple.size() != arity_) throw Error("tuple arity mismatch");
  return contains(weak_order_of(tuple, sorts_));
}

PointRelation PointRelation::flatten(std::size_t cap) const {
  if (single_sort()) return PointRelation(arity_, std::vector<int>(arity_, 0), models_);
  std::vector<WeakOrder> out;
  for (auto& w : enumerate_weak_orders(arity_, cap)) {
    std::vector<std::int64_t> keys(w.ranks().begin(), w.ranks().end());
    if (contains(WeakOrder::from_keys(keys, sorts_))) out.push_back(std::move(w));
  }
  return PointRelation(arity_, std::vector<int>(arity_, 0), std::move(out));
}

std::vector<WeakOrder> PointRelation::project(std::span<const std::size_t> slots) const {
  std::vector<int> sub;
  for (auto s : slots) sub.push_back(sorts_[s]);
  std::vector<WeakOrder> out;
  out.reserve(models_.size());
  for (const auto& w : models_) out.push_back(w.restrict(slots, sub));
  normalize(out);
  return out;
}

PointRelation PointRelation::unite(const PointRelation& other) const {
  if (other.arity_ != arity_ || other.sorts_ != sorts_) throw Error("incompatible relations");
  auto models = models_;
  models.insert(models.end(), other.models_.begin(), other.models_.end());
  return PointRelation(arity_, sorts_, std::move(models));
}

PointRelation PointRelation::intersect(const PointRelation& other) const {
  if (other.arity_ != arity_ || other.sorts_ != sorts_) throw Error("incompatible relations");
  std::vector<WeakOrder> models;
  std::set_intersection(models_.begin(), models_.end(), other.models_.begin(),
                        other.models_.end(), std::back_inserter(models));
  return PointRelation(arity_, sorts_, std::move(models));
}

std::vector<int> pair_sorts(Structure s) {
  auto one = slot_sorts(s);
  auto out = one;
  out.insert(out.end(), one.begin(), one.end());
  return out;
}

namespace {

struct Classified {
  WeakOrder order;
  std::uint32_t code;
};

// Every valid pair order type with the basic code it realizes.
const std::vector<Classified>& classified_orders(Structure s) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<Classified>> cache;
  std::lock_guard lock(mu);
  auto key = std::make_pair(static_cast<int>(s.kind), s.dim);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  std::vector<Classified> out;
  const auto per = slots_per_element(s);
  for (auto& w : enumerate_weak_orders(pair_sorts(s))) {
    std::vector<Rational> v;
    for (auto r : w.ranks()) v.emplace_back(r);
    auto a = element_from_slots(s, std::span(v).subspan(0, per));
    auto b = element_from_slots(s, std::span(v).subspan(per, per));
    if (!a || !b) continue;
    if (auto c = classify_pair(s, *a, *b)) out.push_back({std::move(w), c->code});
  }
  return cache.emplace(key, std::move(out)).first->second;
}

}  // namespace

PointRelation relation_of(const QualitativeRelation& rel) {
  const auto s = rel.calculus();
  std::vector<WeakOrder> models;
  for (const auto& c : classified_orders(s)) {
    if (rel.contains(c.code)) models.push_back(c.order);
  }
  return PointRelation(2 * slots_per_element(s), pair_sorts(s), std::move(models));
}

}  // namespace qsr
