#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsr/clauses.hpp"
#include "qsr/point_relation.hpp"

namespace qsr {

/// pp(x,y) = x if x < 0 else y; dual-pp(x,y) = y if x < 0 else x.
enum class ThresholdOp { PP, DualPP };

std::string to_string(ThresholdOp op);

/// Position of the constant 0 among the classes of a combined order: strictly
/// below class `index` (index == classes means above all), or equal to it.
struct ZeroCut {
  int index = 0;
  bool equal = false;
  friend auto operator<=>(const ZeroCut&, const ZeroCut&) = default;
};

/// Two k-tuples placed in one order: `combined` ranks 2k slots (first tuple
/// in 0..k-1, second in k..2k-1) and restricts to `first` and `second`.
struct JointRealization {
  WeakOrder first, second, combined;
  ZeroCut zero;

  std::size_t arity() const { return first.arity(); }
  /// Order type of concrete rational tuples.
  static JointRealization from_tuples(std::span<const Rational> t1, std::span<const Rational> t2);
  /// Smallest integers realizing the order and cut: negative classes -n..-1,
  /// a class equal to zero gets 0, classes above zero 1, 2, ...
  std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> render() const;
  bool valid() const;
};

/// Order type of the coordinate-wise image; depends only on the realization.
WeakOrder apply_op(ThresholdOp op, const JointRealization& jr);
/// Concrete evaluation on rationals.
std::vector<Rational> apply_op(ThresholdOp op, std::span<const Rational> t1,
                               std::span<const Rational> t2);

/// All combined orders of two weak orders (merges of their class sequences).
std::vector<WeakOrder> joint_orders(const WeakOrder& a, const WeakOrder& b);

struct Violation {
  JointRealization realization;
  std::vector<std::int64_t> t1, t2, result;
};

struct Preservation {
  bool preserved = true;
  std::optional<Violation> violation;  // least under (classes, magnitude, t1, t2)
};

inline constexpr std::size_t kPolyArityCap = 6;

/// Exhaustive check over model pairs, combined orders and strict zero cuts.
/// Multi-sort relations are read through flatten(). Throws CapExceeded.
Preservation preserved_by(const PointRelation& R, ThresholdOp op,
                          std::size_t cap = kPolyArityCap);

/// Least violation whose first tuple is R.models()[row] (the unit of work
/// the preservation kernels distribute). R must be single-sort.
std::optional<Violation> least_violation_from(const PointRelation& R, ThresholdOp op,
                                              std::size_t row);
bool violation_less(const Violation& a, const Violation& b);

/// Every violating realization (up to `limit`), in enumeration order.
std::vector<Violation> violations(const PointRelation& R, ThresholdOp op, std::size_t limit,
                                  std::size_t cap = kPolyArityCap);

/// Models of x=y -> u=v over four single-sort slots.
PointRelation implication_relation();
/// True if R equals the implication relation under some slot permutation.
bool is_implication(const PointRelation& R);

struct LanguageEntry {
  std::string id;
  PointRelation relation;
  std::optional<ClauseSet> syntax;  // enables the syntactic class checks
};

/// JSON report: per relation the syntactic and semantic class memberships and
/// pp / dual-pp results with witnesses, plus the language-level verdict.
std::string tractability_report(const std::vector<LanguageEntry>& language);

}  // namespace qsr
