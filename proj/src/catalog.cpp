#include <functional>

#include "qsr/error.hpp"
#include "qsr/interpretation.hpp"

namespace qsr {

namespace {

std::string slot_vars(char prefix, int n) {
  std::string out;
  for (int i = 1; i <= n; ++i) out += (i > 1 ? " " : "") + std::string(1, prefix) + std::to_string(i);
  return out;
}

// Point-language formula over u1..un v1..vn from endpoint atoms over 2n slots.
PPFormula point_formula(const std::vector<OrderAtom>& atoms, int n) {
  auto f = parse_pp(Structure::point(), slot_vars('u', n) + " " + slot_vars('v', n), "true");
  for (const auto& a : atoms) {
    if (a.op == OrderOp::Ne) throw Error("disequality in a basic row");
    f.atoms.push_back({PPAtom::Kind::Order, {}, a.op, {a.lhs.var_index(), a.rhs.var_index()}});
  }
  return f;
}

PPFormula slotwise_equality(int n) {
  std::string body;
  for (int i = 1; i <= n; ++i) {
    body += (i > 1 ? " & u" : "u") + std::to_string(i) + " = v" + std::to_string(i);
  }
  return parse_pp(Structure::point(), slot_vars('u', n) + " " + slot_vars('v', n), body);
}

std::vector<Rational> rationals(std::span<const Element> xs) {
  std::vector<Rational> out;
  for (const auto& x : xs) {
    if (const auto* q = std::get_if<Rational>(&x)) out.push_back(*q);
    else return {};
  }
  return out;
}

// Interpretation of a calculus in the point language, reading slots directly.
Interpretation slot_interpretation(std::string name, Structure target, std::string domain,
                                   bool forward_only) {
  const int n = static_cast<int>(slots_per_element(target));
  Interpretation J;
  J.name = std::move(name);
  J.source = Structure::point();
  J.target = target;
  J.dimension = n;
  J.domain = parse_pp(Structure::point(), slot_vars('u', n), domain);
  for (std::uint32_t c = 0; c < basic_count(target); ++c) {
    const BasicCode code{target, c};
    const auto alts = basic_to_point_formula(code).alternatives;
    const std::vector<OrderAtom>* pick = &alts.front();
    if (forward_only) {
      for (const auto& alt : alts) {
        auto with_dom = alt;
        with_dom.push_back(OrderAtom::make(0, OrderOp::Lt, 1));
        with_dom.push_back(OrderAtom::make(2, OrderOp::Lt, 3));
        if (conjunction_satisfiable(with_dom)) {
          pick = &alt;
          break;
        }
      }
    }
    J.relations.emplace(code.name(), point_formula(*pick, n));
  }
  J.relations.emplace("=", slotwise_equality(n));
  J.coordinate_map = [target](std::span<const Element> xs) -> std::optional<Element> {
    const auto v = rationals(xs);
    if (v.size() != slots_per_element(target)) return std::nullopt;
    return element_from_slots(target, v);
  };
  return J;
}

// Unary interpretation of the point language reading slot k of an element.
Interpretation projection(std::string name, Structure source, int k, std::string domain,
                          std::string less, std::string equal) {
  Interpretation I;
  I.name = std::move(name);
  I.source = source;
  I.target = Structure::point();
  I.dimension = 1;
  I.domain = parse_pp(source, "X", domain);
  I.relations.emplace("<", parse_pp(source, "X Y", less));
  I.relations.emplace("=", parse_pp(source, "X Y", equal));
  const auto dom = I.domain;
  I.coordinate_map = [source, k, dom](std::span<const Element> xs) -> std::optional<Element> {
    if (xs.size() != 1 || !element_in(source, xs[0])) return std::nullopt;
    if (!dom.atoms.empty() && !eval_pp_formula(dom, xs)) return std::nullopt;
    return Element(endpoints(xs[0]).at(k));
  };
  return I;
}

}  // namespace

Catalog::Catalog() {
  const auto IA = Structure::ia();
  const auto RA = Structure::ra();
  const auto CDC = Structure::cdc();
  const auto DIA = Structure::dia();
  auto add = [&](Interpretation i) { interps_.emplace(i.name, std::move(i)); };
  auto cross = [&](const std::string& a, const std::string& b, const std::string& op,
                   Structure s, const std::string& body) {
    cross_.emplace(a + "|" + b + "|" + op, parse_pp(s, "X Y", body));
  };

  // Interval algebra.
  add(slot_interpretation("ia.J", IA, "u1 < u2", false));
  add(projection("ia.I1", IA, 0, "true", "exists Y1 W . Y s Y1 & X s W & Y1 f W",
                 "exists W . X s W & Y s W"));
  add(projection("ia.I2", IA, 1, "true", "exists X1 W . X f X1 & Y f W & X1 s W",
                 "exists W . X f W & Y f W"));
  cross("ia.I1", "ia.I2", "<", IA, "exists A B W . X s A & W s A & Y f B & W f B");
  cross("ia.I2", "ia.I1", "<", IA, "X p Y");
  cross("ia.I1", "ia.I2", "=", IA, "X mi Y");
  cross("ia.I2", "ia.I1", "=", IA, "X m Y");
  thetas_.emplace("ia", parse_pp(IA, "Z X Y", "X s Z & Y f Z"));

  // Rectangle algebra: axis 1 via (c,*), axis 2 via (*,c).
  add(slot_interpretation("ra.J", RA, "u1 < u2 & u3 < u4", false));
  for (int axis = 0; axis < 2; ++axis) {
    auto code = [axis](const char* c) {
      return axis == 0 ? "(" + std::string(c) + ",*)" : "(*," + std::string(c) + ")";
    };
    const std::string lo = "ra.I" + std::to_string(2 * axis + 1);
    const std::string hi = "ra.I" + std::to_string(2 * axis + 2);
    add(projection(lo, RA, 2 * axis, "true",
                   "exists Y1 W . Y " + code("s") + " Y1 & X " + code("s") + " W & Y1 " +
                       code("f") + " W",
                   "exists W . X " + code("s") + " W & Y " + code("s") + " W"));
    add(projection(hi, RA, 2 * axis + 1, "true",
                   "exists X1 W . X " + code("f") + " X1 & Y " + code("f") + " W & X1 " +
                       code("s") + " W",
                   "exists W . X " + code("f") + " W & Y " + code("f") + " W"));
    cross(lo, hi, "<", RA,
          "exists A B W . X " + code("s") + " A & W " + code("s") + " A & Y " + code("f") +
              " B & W " + code("f") + " B");
    cross(hi, lo, "<", RA, "X " + code("p") + " Y");
    cross(lo, hi, "=", RA, "X " + code("mi") + " Y");
    cross(hi, lo, "=", RA, "X " + code("m") + " Y");
  }
  thetas_.emplace("ra", parse_pp(RA, "Z W1 W2 W3 W4",
                                 "W1 (s,*) Z & W2 (f,*) Z & W3 (*,s) Z & W4 (*,f) Z"));

  // Cardinal directions.
  add(slot_interpretation("cdc.J", CDC, "true", false));
  add(projection("cdc.I1", CDC, 0, "true", "exists X1 Y1 . X1 N X & Y1 N Y & X1 W Y1",
                 "exists Z . Z N X & Z N Y"));
  add(projection("cdc.I2", CDC, 1, "true", "exists X1 Y1 . X1 E X & Y1 E Y & X1 S Y1",
                 "exists Z . Z E X & Z E Y"));
  thetas_.emplace("cdc", parse_pp(CDC, "Z U V", "exists U1 V1 . U1 N U & U1 N Z & V1 E V & V1 E Z"));

  // Directed intervals with forw. J only produces forward intervals.
  {
    auto J = slot_interpretation("dia.J", DIA, "u1 <= u2", true);
    J.relations.emplace("forw", parse_pp(Structure::point(), "u1 u2", "u1 < u2"));
    J.notes.push_back("domain u1 <= u2 admits u1 = u2, which names no directed interval");
    J.notes.push_back("Eq!= is unsatisfiable on the forward-only domain");
    add(std::move(J));
  }
  add(projection("dia.I1", DIA, 0, "forw X", "exists Y1 W . Y cb= Y1 & X cb= W & Y1 cf= W",
                 "exists W . X cb= W & Y cb= W"));
  add(projection("dia.I2", DIA, 1, "forw X", "exists X1 W . X cf= X1 & Y cf= W & X1 cb= W",
                 "exists W . X cf= W & Y cf= W"));
  cross("dia.I1", "dia.I2", "<", DIA, "exists A B W . X cb= A & W cb= A & Y cf= B & W cf= B");
  // Only the strict part of <= is pp-expressible here; the point-like case is excluded.
  cross("dia.I1", "dia.I2", "<=", DIA, "exists A B W . X cb= A & W cb= A & Y cf= B & W cf= B");
  cross("dia.I2", "dia.I1", "<", DIA, "X e= Y");
  thetas_.emplace("dia", parse_pp(DIA, "Z X Y", "X cb= Z & Y cf= Z"));

  definitions_.push_back({"ra.s_top", parse_pp(RA, "X Y", "exists Z . X (s,p) Z & Z (s,pi) Y"),
                          "(s,T): s on the first axis, anything on the second", false});
  definitions_.push_back(
      {"ia.s_from_m", parse_pp(IA, "X Y", "exists Z U V . Z m X & Z m Y & X m U & U m V & Y m V"),
       "s from m", true});
  definitions_.push_back(
      {"ia.f_from_m", parse_pp(IA, "X Y", "exists Z U V . X m Z & Y m Z & U m X & V m U & V m Y"),
       "f from m", true});
  definitions_.push_back(
      {"dia.same", parse_pp(DIA, "U V", "exists U1 V1 . U e= U1 & V e= V1 & U1 eq= V1"),
       "U and V have the same direction", false});
}

const Interpretation& Catalog::interpretation(std::string_view name) const {
  const auto it = interps_.find(name);
  if (it == interps_.end()) {
    throw DefinitionMissing("no interpretation named '" + std::string(name) + "'");
  }
  return it->second;
}

std::vector<std::string> Catalog::interpretation_names() const {
  std::vector<std::string> out;
  for (const auto& [n, _] : interps_) out.push_back(n);
  return out;
}

const NamedDefinition& Catalog::definition(std::string_view name) const {
  for (const auto& d : definitions_) {
    if (d.name == name) return d;
  }
  throw DefinitionMissing("no definition named '" + std::string(name) + "'");
}

std::optional<PPFormula> Catalog::cross(std::string_view a, std::string_view b,
                                        std::string_view op) const {
  const auto it = cross_.find(std::string(a) + "|" + std::string(b) + "|" + std::string(op));
  if (it == cross_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> Catalog::family_inner(std::string_view family) const {
  if (family == "ia") return {"ia.I1", "ia.I2"};
  if (family == "ra") return {"ra.I1", "ra.I2", "ra.I3", "ra.I4"};
  if (family == "cdc") return {"cdc.I1", "cdc.I2"};
  if (family == "dia") return {"dia.I1", "dia.I2"};
  throw DefinitionMissing("unknown family '" + std::string(family) + "'");
}

HomotopyWitness Catalog::homotopy(std::string_view family) const {
  std::vector<Interpretation> inner;
  for (const auto& n : family_inner(family)) inner.push_back(interpretation(n));
  const auto& outer = interpretation(std::string(family) + ".J");
  return {compose(outer, inner), thetas_.find(family)->second};
}

const Catalog& catalog() {
  static const Catalog c;
  return c;
}

}  // namespace qsr
