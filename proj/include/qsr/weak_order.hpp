#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qsr/rational.hpp"

namespace qsr {

/// Hard limit for materializing all weak orders of a slot group.
inline constexpr std::size_t kWeakOrderCap = 10;

/// A total preorder on k slots stored as a rank per slot.
///
/// Slots may be partitioned into sorts (e.g. the x and y axes of a plane);
/// slots of different sorts are never compared and ranks are canonical
/// (surjective onto 0..m-1) within each sort separately. The single-sort case
/// is the ordinary order type of a rational tuple.
class WeakOrder {
 public:
  WeakOrder() = default;

  /// Canonicalizes arbitrary integer keys (ties = equal ranks) per sort.
  /// An empty `sorts` span means a single sort.
  static WeakOrder from_keys(std::span<const std::int64_t> keys,
                             std::span<const int> sorts = {});
  static WeakOrder from_ranks(std::vector<std::uint8_t> ranks) {
    WeakOrder w;
    w.ranks_ = std::move(ranks);
    return w;
  }

  std::size_t arity() const { return ranks_.size(); }
  int rank(std::size_t slot) const { return ranks_[slot]; }
  const std::vector<std::uint8_t>& ranks() const { return ranks_; }

  /// Number of classes (single-sort reading).
  int classes() const;

  bool less(std::size_t a, std::size_t b) const { return ranks_[a] < ranks_[b]; }
  bool equal(std::size_t a, std::size_t b) const { return ranks_[a] == ranks_[b]; }

  /// Restriction to the given slots, re-canonicalized.
  WeakOrder restrict(std::span<const std::size_t> slots,
                     std::span<const int> sorts = {}) const;

  /// Order reversal (x < y becomes x > y), canonical per sort.
  WeakOrder reversed(std::span<const int> sorts = {}) const;

  /// Canonical check: ranks in every sort are exactly 0..m-1.
  bool is_canonical(std::span<const int> sorts = {}) const;

  friend auto operator<=>(const WeakOrder&, const WeakOrder&) = default;
  friend bool operator==(const WeakOrder&, const WeakOrder&) = default;

 private:
  std::vector<std::uint8_t> ranks_;
};

/// All canonical weak orders on k single-sort slots, each exactly once, in a
/// deterministic order. Throws CapExceeded when k > cap.
std::vector<WeakOrder> enumerate_weak_orders(std::size_t k,
                                             std::size_t cap = kWeakOrderCap);

/// All canonical multi-sort weak orders: the product of per-sort enumerations.
/// The cap applies to the largest sort.
std::vector<WeakOrder> enumerate_weak_orders(std::span<const int> sorts,
                                             std::size_t cap = kWeakOrderCap);

/// Order type of a rational tuple.
WeakOrder weak_order_of(std::span<const Rational> values,
                        std::span<const int> sorts = {});

/// Fubini number: count of weak orders on k elements.
std::uint64_t ordered_bell(std::size_t k);

/// Slot indices grouped by sort id, sorts in ascending id order.
std::vector<std::vector<std::size_t>> sort_groups(std::size_t arity,
                                                  std::span<const int> sorts);

}  // namespace qsr
