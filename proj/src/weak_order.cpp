#include "qsr/weak_order.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "qsr/error.hpp"

namespace qsr {

namespace {

int sort_of(std::span<const int> sorts, std::size_t slot) {
  return sorts.empty() ? 0 : sorts[slot];
}

}  // namespace

std::vector<std::vector<std::size_t>> sort_groups(std::size_t arity,
                                                  std::span<const int> sorts) {
  std::map<int, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < arity; ++i) groups[sort_of(sorts, i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  out.reserve(groups.size());
  for (auto& [id, slots] : groups) out.push_back(std::move(slots));
  return out;
}

WeakOrder WeakOrder::from_keys(std::span<const std::int64_t> keys,
                               std::span<const int> sorts) {
  std::vector<std::uint8_t> ranks(keys.size(), 0);
  for (const auto& group : sort_groups(keys.size(), sorts)) {
    std::vector<std::int64_t> distinct;
    distinct.reserve(group.size());
    for (auto s : group) distinct.push_back(keys[s]);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (auto s : group) {
      ranks[s] = static_cast<std::uint8_t>(
          std::lower_bound(distinct.begin(), distinct.end(), keys[s]) -
          distinct.begin());
    }
  }
  return from_ranks(std::move(ranks));
}

int WeakOrder::classes() const {
  if (ranks_.empty()) return 0;
  return *std::max_element(ranks_.begin(), ranks_.end()) + 1;
}

WeakOrder WeakOrder::restrict(std::span<const std::size_t> slots,
                              std::span<const int> sorts) const {
  std::vector<std::int64_t> keys;
  keys.reserve(slots.size());
  for (auto s : slots) keys.push_back(ranks_[s]);
  return from_keys(keys, sorts);
}

WeakOrder WeakOrder::reversed(std::span<const int> sorts) const {
  std::vector<std::int64_t> keys;
  keys.reserve(ranks_.size());
  for (auto r : ranks_) keys.push_back(-static_cast<std::int64_t>(r));
  return from_keys(keys, sorts);
}

bool WeakOrder::is_canonical(std::span<const int> sorts) const {
  for (const auto& group : sort_groups(ranks_.size(), sorts)) {
    std::vector<bool> seen(group.size(), false);
    for (auto s : group) {
      if (ranks_[s] >= group.size()) return false;
      seen[ranks_[s]] = true;
    }
    const auto used = static_cast<std::size_t>(
        std::find(seen.begin(), seen.end(), false) - seen.begin());
    for (std::size_t r = used; r < seen.size(); ++r) {
      if (seen[r]) return false;
    }
  }
  return true;
}

std::vector<WeakOrder> enumerate_weak_orders(std::size_t k, std::size_t cap) {
  if (k > cap) {
    throw CapExceeded("weak-order enumeration over " + std::to_string(k) +
                      " slots exceeds cap " + std::to_string(cap));
  }
  // Insert slots one at a time: either into an existing class or as a new
  // class in one of the m+1 gaps. Every weak order arises exactly once.
  std::vector<std::vector<std::uint8_t>> current{{}};
  for (std::size_t slot = 0; slot < k; ++slot) {
    std::vector<std::vector<std::uint8_t>> next;
    for (const auto& ranks : current) {
      const int m = ranks.empty() ? 0 : *std::max_element(ranks.begin(), ranks.end()) + 1;
      for (int c = 0; c < m; ++c) {
        auto r = ranks;
        r.push_back(static_cast<std::uint8_t>(c));
        next.push_back(std::move(r));
      }
      for (int gap = 0; gap <= m; ++gap) {
        auto r = ranks;
        for (auto& x : r) {
          if (x >= gap) ++x;
        }
        r.push_back(static_cast<std::uint8_t>(gap));
        next.push_back(std::move(r));
      }
    }
    current = std::move(next);
  }
  std::vector<WeakOrder> out;
  out.reserve(current.size());
  for (auto& r : current) out.push_back(WeakOrder::from_ranks(std::move(r)));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<WeakOrder> enumerate_weak_orders(std::span<const int> sorts,
                                             std::size_t cap) {
  const auto groups = sort_groups(sorts.size(), sorts);
  std::vector<std::vector<WeakOrder>> per_group;
  per_group.reserve(groups.size());
  for (const auto& g : groups) per_group.push_back(enumerate_weak_orders(g.size(), cap));

  std::vector<WeakOrder> out;
  std::vector<std::size_t> idx(groups.size(), 0);
  while (true) {
    std::vector<std::uint8_t> ranks(sorts.size(), 0);
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const auto& w = per_group[g][idx[g]];
      for (std::size_t i = 0; i < groups[g].size(); ++i) {
        ranks[groups[g][i]] = static_cast<std::uint8_t>(w.rank(i));
      }
    }
    out.push_back(WeakOrder::from_ranks(std::move(ranks)));
    std::size_t g = groups.size();
    while (g > 0) {
      --g;
      if (++idx[g] < per_group[g].size()) break;
      idx[g] = 0;
      if (g == 0) {
        std::sort(out.begin(), out.end());
        return out;
      }
    }
    if (groups.empty()) return out;
  }
}

WeakOrder weak_order_of(std::span<const Rational> values, std::span<const int> sorts) {
  std::vector<std::int64_t> keys(values.size(), 0);
  for (const auto& group : sort_groups(values.size(), sorts)) {
    std::vector<Rational> distinct;
    for (auto s : group) distinct.push_back(values[s]);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (auto s : group) {
      keys[s] = std::lower_bound(distinct.begin(), distinct.end(), values[s]) -
                distinct.begin();
    }
  }
  return WeakOrder::from_keys(keys, sorts);
}

std::uint64_t ordered_bell(std::size_t k) {
  // a(n) = sum_{i=1..n} C(n,i) a(n-i), a(0) = 1
  std::vector<std::uint64_t> a(k + 1, 0);
  a[0] = 1;
  for (std::size_t n = 1; n <= k; ++n) {
    std::uint64_t binom = 1;
    for (std::size_t i = 1; i <= n; ++i) {
      binom = binom * (n - i + 1) / i;
      a[n] += binom * a[n - i];
    }
  }
  return a[k];
}

}  // namespace qsr
