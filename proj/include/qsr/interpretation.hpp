#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qsr/pp_formula.hpp"

namespace qsr {

/// Partial map from k-tuples of source elements to a target element.
using CoordinateMap = std::function<std::optional<Element>(std::span<const Element>)>;

/// A pp-interpretation (k, domain, coordinate map) of `target` in `source`.
///
/// Relation formulas are keyed by target symbol: basic code names, "=" for
/// equality, "<" for the point order, and "forw" for the DIA unary. A formula
/// for an m-ary symbol has k*m free variables, grouped per target argument.
struct Interpretation {
  std::string name;
  Structure source;
  Structure target;
  int dimension = 1;
  PPFormula domain;
  std::map<std::string, PPFormula> relations;
  CoordinateMap coordinate_map;
  std::vector<std::string> notes;

  /// Throws DefinitionMissing when the symbol has no formula.
  const PPFormula& relation(std::string_view symbol) const;
  bool has_relation(std::string_view symbol) const;
};

/// J o (I_1, ..., I_j): each I_c interprets J's source in a common base
/// structure with a shared dimension i. The result has dimension j*i; its
/// domain is the conjunction of the I-domains with J's domain rewritten
/// through the I's, and every relation formula is obtained by substituting
/// J's atoms. Mixed atoms (u_a op u_b with I_a != I_b) use the catalog's
/// cross formulas.
Interpretation compose(const Interpretation& outer, std::span<const Interpretation> inner);

/// Certificate that a composed interpretation is pp-homotopic to the identity:
/// theta(x0, x1..x_n) holds iff x0 is the composed image of (x1..x_n).
struct HomotopyWitness {
  Interpretation composed;
  PPFormula theta;
};

struct HomotopyReport {
  std::size_t checked = 0;
  std::size_t skipped = 0;
  std::size_t counterexamples = 0;
  bool unique_everywhere = true;
  std::optional<std::string> first_counterexample;
  std::vector<std::string> notices;
  std::uint64_t seed = 0;

  bool passed() const { return counterexamples == 0; }
};

/// Per-sample verdict, the unit of work behind check_homotopy_identity.
enum class SampleVerdict {
  Ok,
  OutsideDomain,   // composed domain formula fails
  OutsideWitness,  // domain holds but no x0 satisfies theta
  NoImage,
  ThetaRejectsImage,
  NotUnique,
  Invalid
};

SampleVerdict check_homotopy_sample(const HomotopyWitness& w, std::span<const Element> sample);

/// For each sample inside the composed domain (where some x0 satisfies theta),
/// checks that the coordinate map's image satisfies theta and that no other
/// element does. Samples outside the domain are skipped with a notice.
HomotopyReport check_homotopy_identity(const HomotopyWitness& w,
                                       std::span<const std::vector<Element>> samples);

/// Uniform random element with integer coordinates in [0, range).
Element random_element(Structure s, std::mt19937_64& rng, int range);

/// Rejection sampling: draws input tuples until `count` of them lie in both the
/// composed domain and the witness domain, or `max_attempts` is reached.
std::vector<std::vector<Element>> homotopy_samples(const HomotopyWitness& w, std::size_t count,
                                                   std::uint64_t seed, int range = 8,
                                                   std::size_t max_attempts = 200000);

/// A named pp-definition kept alongside the interpretations.
struct NamedDefinition {
  std::string name;
  PPFormula formula;
  std::string description;
  bool derived = false;
};

/// Read-only registry of the concrete interpretations. Stable names:
/// ia.J ia.I1 ia.I2, ra.J ra.I1..ra.I4, cdc.J cdc.I1 cdc.I2, dia.J dia.I1 dia.I2.
class Catalog {
 public:
  const Interpretation& interpretation(std::string_view name) const;
  std::vector<std::string> interpretation_names() const;
  const NamedDefinition& definition(std::string_view name) const;
  const std::vector<NamedDefinition>& definitions() const { return definitions_; }
  /// Formula for u_a op u_b with u_a read through `a` and u_b through `b`.
  std::optional<PPFormula> cross(std::string_view a, std::string_view b,
                                 std::string_view op) const;
  /// Family "ia", "ra", "cdc" or "dia": J o (I_1..I_j) with its theta.
  HomotopyWitness homotopy(std::string_view family) const;
  /// Inner interpretation names of a family in coordinate order.
  std::vector<std::string> family_inner(std::string_view family) const;

 private:
  friend const Catalog& catalog();
  Catalog();
  std::map<std::string, Interpretation, std::less<>> interps_;
  std::vector<NamedDefinition> definitions_;
  std::map<std::string, PPFormula, std::less<>> cross_;
  std::map<std::string, PPFormula, std::less<>> thetas_;
};

const Catalog& catalog();

}  // namespace qsr
