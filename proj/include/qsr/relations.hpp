#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qsr/order_store.hpp"
#include "qsr/rational.hpp"

namespace qsr {

enum class StructureKind { Point, IA, BA, CDC, DIA };

/// A structure tag: the point language, or one of the calculi. `dim` is the
/// block dimension p for BA and 1 otherwise.
struct Structure {
  StructureKind kind = StructureKind::IA;
  int dim = 1;

  static Structure point() { return {StructureKind::Point, 1}; }
  static Structure ia() { return {StructureKind::IA, 1}; }
  static Structure ba(int p) { return {StructureKind::BA, p}; }
  static Structure ra() { return ba(2); }
  static Structure cdc() { return {StructureKind::CDC, 1}; }
  static Structure dia() { return {StructureKind::DIA, 1}; }

  std::string name() const;
  friend bool operator==(const Structure&, const Structure&) = default;
};

/// Parses "IA", "RA", "BA<p>", "CDC", "DIA", "POINT".
Structure parse_structure(std::string_view text);

// --- domain elements -------------------------------------------------------

/// Closed interval with lo < hi; point intervals are rejected.
struct Interval {
  Rational lo, hi;
  static Interval make(Rational lo, Rational hi);
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct Block {
  std::vector<Interval> axes;
  std::size_t dim() const { return axes.size(); }
  friend bool operator==(const Block&, const Block&) = default;
};

struct PlanePoint {
  Rational x, y;
  friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
};

/// start != end; forward iff end > start.
struct DirectedInterval {
  Rational start, end;
  static DirectedInterval make(Rational start, Rational end);
  bool forward() const { return end > start; }
  friend bool operator==(const DirectedInterval&, const DirectedInterval&) = default;
};

using Element = std::variant<Rational, Interval, Block, PlanePoint, DirectedInterval>;

std::string to_string(const Element& e);

/// Rational coordinates ("slots") of an element, in declaration order:
/// IA (lo,hi); BA (lo1,hi1,...,lop,hip); CDC (x,y); DIA (start,end); Point (v).
std::size_t slots_per_element(Structure s);
std::vector<Rational> endpoints(const Element& e);
/// Sort id per slot: the axis for BA and CDC, 0 elsewhere.
std::vector<int> slot_sorts(Structure s);
/// Slot display names for a variable, e.g. X- X+ or X1- X1+ X2- X2+.
std::vector<std::string> slot_names(Structure s, std::string_view var);
/// Domain constraint over one element's slots (slot indices start at `base`).
std::vector<OrderAtom> domain_atoms(Structure s, int base = 0);
/// Rebuilds an element from its slots; nullopt when the domain is violated.
std::optional<Element> element_from_slots(Structure s, std::span<const Rational> slots);
bool element_in(Structure s, const Element& e);

// --- basic relations -------------------------------------------------------

namespace ia {
enum Code : std::uint32_t { p, pi, m, mi, o, oi, d, di, s, si, f, fi, eq };
inline constexpr std::uint32_t kCount = 13;
}  // namespace ia

namespace cdc {
enum Code : std::uint32_t { N, S, E, W, NE, SE, SW, NW };
inline constexpr std::uint32_t kCount = 8;
}  // namespace cdc

namespace dia {
enum Code : std::uint32_t { cb, cf, eq, Eqn, e };
inline constexpr std::uint32_t kCount = 5;
}  // namespace dia

/// A basic relation of a calculus. BA codes are base-13 numbers whose most
/// significant digit is the first axis.
struct BasicCode {
  Structure calculus;
  std::uint32_t code = 0;

  std::string name() const;
  friend bool operator==(const BasicCode&, const BasicCode&) = default;
};

std::uint32_t basic_count(Structure s);
BasicCode ba_code(std::span<const std::uint32_t> axis_codes);
std::vector<std::uint32_t> ba_axes(const BasicCode& code);
/// Parses a single code name ("s", "pi", "(s,p)", "NE", "cb="). Throws on unknown.
BasicCode parse_basic(Structure s, std::string_view text);

/// DNF over the 2n slots of a pair (first element 0..n-1, second n..2n-1).
/// Every alternative is a conjunction of order atoms. All codes except the
/// direction-dependent DIA ones have a single alternative.
struct SlotFormula {
  std::vector<std::vector<OrderAtom>> alternatives;
};

/// Defining endpoint formula of a basic code (without the domain atoms).
SlotFormula basic_to_point_formula(const BasicCode& code);

bool holds(const BasicCode& code, const Element& a, const Element& b);

/// The unique basic code holding between a and b; nullopt when none holds
/// (coincident CDC points, or DIA pairs outside the supported fragment).
std::optional<BasicCode> classify_pair(Structure s, const Element& a, const Element& b);

/// Disjunctive relation: a set of basic codes. Dense bitset for up to 169
/// basics (IA, RA, CDC, DIA), sorted code list for BA with p > 2.
class QualitativeRelation {
 public:
  QualitativeRelation() = default;
  explicit QualitativeRelation(Structure s);
  QualitativeRelation(Structure s, std::span<const std::uint32_t> codes);

  static QualitativeRelation full(Structure s);
  static QualitativeRelation single(const BasicCode& code);

  Structure calculus() const { return calculus_; }
  bool contains(std::uint32_t code) const;
  void insert(std::uint32_t code);
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  std::vector<std::uint32_t> codes() const;
  std::vector<BasicCode> basics() const;

  /// Per-axis projections for BA (the IA codes used on each axis).
  std::vector<QualitativeRelation> projections() const;
  /// True when the relation equals the product of its axis projections.
  bool is_product() const;

  std::string to_string() const;

  friend bool operator==(const QualitativeRelation& a, const QualitativeRelation& b);

 private:
  bool dense() const;
  Structure calculus_;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint32_t> sparse_;
};

/// Parses "{ s f }" or "s f" style code lists.
QualitativeRelation parse_relation(Structure s, std::string_view text);

BasicCode converse(const BasicCode& code);
QualitativeRelation converse(const QualitativeRelation& r);
QualitativeRelation intersect(const QualitativeRelation& a, const QualitativeRelation& b);
QualitativeRelation unite(const QualitativeRelation& a, const QualitativeRelation& b);
QualitativeRelation complement(const QualitativeRelation& r);

/// Composition by exists-projection: every basic holding between a and c for
/// some b with (a,b) in r and (b,c) in s. Derived from weak-order enumeration
/// over the joint endpoints; DIA results are restricted to the fragment.
QualitativeRelation compose(const QualitativeRelation& r, const QualitativeRelation& s);

/// Shifts axis i of the block by offsets[i].
Block apply_translation(const Block& b, std::span<const Rational> offsets);
/// Per-axis translation of any element (IA/DIA/Point: one offset, CDC: x,y).
Element translate_element(const Element& e, std::span<const Rational> offsets);

}  // namespace qsr
