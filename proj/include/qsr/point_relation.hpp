#pragma once

#include <span>
#include <vector>

#include "qsr/order_store.hpp"
#include "qsr/relations.hpp"
#include "qsr/weak_order.hpp"

namespace qsr {

/// A relation fo-definable over (Q;<), stored as the finite set of order types
/// (weak orders) of its tuples. Membership of a rational tuple depends only on
/// its order type. Optional per-slot sorts mark coordinates that are never
/// compared (independent axes); the default is a single sort.
class PointRelation {
 public:
  PointRelation() = default;
  PointRelation(std::size_t arity, std::vector<int> sorts, std::vector<WeakOrder> models);

  static PointRelation full(std::size_t arity, std::vector<int> sorts = {},
                            std::size_t cap = kWeakOrderCap);
  static PointRelation empty(std::size_t arity, std::vector<int> sorts = {});
  /// Models of a conjunction of order atoms over slots 0..arity-1.
  static PointRelation of_atoms(std::size_t arity, std::span<const OrderAtom> atoms,
                                std::vector<int> sorts = {}, std::size_t cap = kWeakOrderCap);

  std::size_t arity() const { return arity_; }
  const std::vector<int>& sorts() const { return sorts_; }
  bool single_sort() const;
  const std::vector<WeakOrder>& models() const { return models_; }
  std::size_t size() const { return models_.size(); }

  bool contains(const WeakOrder& w) const;
  bool contains(std::span<const Rational> tuple) const;

  /// Same relation read over a single sort: every interleaving of the axes.
  PointRelation flatten(std::size_t cap = kWeakOrderCap) const;
  /// Order types of the restriction to the given slots.
  std::vector<WeakOrder> project(std::span<const std::size_t> slots) const;

  PointRelation unite(const PointRelation& other) const;
  PointRelation intersect(const PointRelation& other) const;

  friend bool operator==(const PointRelation&, const PointRelation&) = default;

 private:
  std::size_t arity_ = 0;
  std::vector<int> sorts_;
  std::vector<WeakOrder> models_;  // sorted, unique, canonical
};

/// Endpoint reading of a qualitative relation: weak orders on the endpoint
/// slots of (X, Y) that respect the domain and extend some member basic.
/// BA and CDC relations use one sort per axis.
PointRelation relation_of(const QualitativeRelation& rel);

/// Sorts of the slots of an element pair.
std::vector<int> pair_sorts(Structure s);

}  // namespace qsr
