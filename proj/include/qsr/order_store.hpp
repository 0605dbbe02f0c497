#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qsr/rational.hpp"

namespace qsr {

enum class OrderOp { Lt, Le, Eq, Ne };

std::string_view op_symbol(OrderOp op);

/// A variable index or a rational constant.
struct Term {
  std::variant<int, Rational> value;

  static Term var(int v) { return Term{v}; }
  static Term constant(Rational q) { return Term{q}; }
  bool is_var() const { return std::holds_alternative<int>(value); }
  int var_index() const { return std::get<int>(value); }
  const Rational& constant_value() const { return std::get<Rational>(value); }

  friend bool operator==(const Term&, const Term&) = default;
};

struct OrderAtom {
  Term lhs;
  OrderOp op;
  Term rhs;

  static OrderAtom make(int a, OrderOp op, int b) {
    return {Term::var(a), op, Term::var(b)};
  }
  friend bool operator==(const OrderAtom&, const OrderAtom&) = default;
};

/// Conjunction of order atoms over variables and rational constants.
///
/// Equalities are merged with union-find; < and <= become edges between the
/// merged classes; constants form a strictly increasing spine. The store is
/// consistent iff no strongly connected component contains a strict edge and
/// no disequality joins two nodes of one component. Any consistent store
/// extends to a strict linearization of its components, which is how model()
/// builds witnesses.
class ConjunctiveStore {
 public:
  explicit ConjunctiveStore(int variables = 0) : variables_(variables) {}

  int add_variable() { return variables_++; }
  int variables() const { return variables_; }

  void add(const OrderAtom& atom);
  void add(std::span<const OrderAtom> atoms) {
    for (const auto& a : atoms) add(a);
  }
  void fix(int var, const Rational& value) {
    add(OrderAtom{Term::var(var), OrderOp::Eq, Term::constant(value)});
  }

  bool consistent() const;

  /// Witness values per variable, or nullopt when inconsistent. Without
  /// constants the values are consecutive integers from 0.
  std::optional<std::vector<Rational>> model() const;

  /// Entailed equality classes: a class id per variable (equal ids iff the
  /// store forces equality), or nullopt when inconsistent.
  std::optional<std::vector<int>> equality_classes() const;

  const std::vector<OrderAtom>& atoms() const { return atoms_; }

 private:
  struct Analysis;
  std::optional<Analysis> analyze() const;

  int variables_;
  std::vector<OrderAtom> atoms_;
};

/// True iff some rational assignment extending `fixed` satisfies every atom.
bool conjunction_satisfiable(std::span<const OrderAtom> atoms,
                             const std::map<int, Rational>& fixed = {});

}  // namespace qsr
