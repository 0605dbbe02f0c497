#include "qsr/relations.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>

#include "qsr/error.hpp"
#include "qsr/weak_order.hpp"

namespace qsr {

namespace {

constexpr std::array<std::string_view, ia::kCount> kIaNames = {
    "p", "pi", "m", "mi", "o", "oi", "d", "di", "s", "si", "f", "fi", "eq"};
constexpr std::array<std::string_view, cdc::kCount> kCdcNames = {
    "N", "S", "E", "W", "NE", "SE", "SW", "NW"};
constexpr std::array<std::string_view, dia::kCount> kDiaNames = {
    "cb=", "cf=", "eq=", "Eq!=", "e="};

std::uint32_t pow13(int p) {
  std::uint32_t n = 1;
  for (int i = 0; i < p; ++i) n *= ia::kCount;
  return n;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::optional<std::uint32_t> parse_ia_code(std::string_view t) {
  for (std::uint32_t i = 0; i < ia::kCount; ++i) {
    if (t == kIaNames[i]) return i;
  }
  static const std::map<std::string, std::uint32_t, std::less<>> aliases = {
      {"≡", ia::eq},   {"=", ia::eq},   {"p~", ia::pi},  {"m~", ia::mi}, {"o~", ia::oi},
      {"d~", ia::di},  {"s~", ia::si},  {"f~", ia::fi},  {"p⌣", ia::pi}, {"m⌣", ia::mi},
      {"o⌣", ia::oi}, {"d⌣", ia::di}, {"s⌣", ia::si}, {"f⌣", ia::fi}};
  if (auto it = aliases.find(t); it != aliases.end()) return it->second;
  return std::nullopt;
}

OrderAtom lt(int a, int b) { return OrderAtom::make(a, OrderOp::Lt, b); }
OrderAtom eq(int a, int b) { return OrderAtom::make(a, OrderOp::Eq, b); }

// Endpoint rows over X-=0, X+=1, Y-=2, Y+=3.
std::vector<OrderAtom> ia_row(std::uint32_t code) {
  switch (code) {
    case ia::p: return {lt(1, 2)};
    case ia::pi: return {lt(3, 0)};
    case ia::m: return {eq(1, 2)};
    case ia::mi: return {eq(3, 0)};
    case ia::o: return {lt(0, 2), lt(2, 1), lt(1, 3)};
    case ia::oi: return {lt(2, 0), lt(0, 3), lt(3, 1)};
    case ia::d: return {lt(2, 0), lt(1, 3)};
    case ia::di: return {lt(0, 2), lt(3, 1)};
    case ia::s: return {eq(0, 2), lt(1, 3)};
    case ia::si: return {eq(0, 2), lt(3, 1)};
    case ia::f: return {eq(1, 3), lt(2, 0)};
    case ia::fi: return {eq(1, 3), lt(0, 2)};
    case ia::eq: return {eq(0, 2), eq(1, 3)};
  }
  throw DefinitionMissing("unknown IA code " + std::to_string(code));
}

// Over x=0, y=1, x'=2, y'=3.
std::vector<OrderAtom> cdc_row(std::uint32_t code) {
  switch (code) {
    case cdc::N: return {lt(3, 1), eq(0, 2)};
    case cdc::E: return {lt(2, 0), eq(1, 3)};
    case cdc::S: return {lt(1, 3), eq(0, 2)};
    case cdc::W: return {lt(0, 2), eq(1, 3)};
    case cdc::NE: return {lt(3, 1), lt(2, 0)};
    case cdc::SE: return {lt(1, 3), lt(2, 0)};
    case cdc::SW: return {lt(1, 3), lt(0, 2)};
    case cdc::NW: return {lt(3, 1), lt(0, 2)};
  }
  throw DefinitionMissing("unknown CDC code " + std::to_string(code));
}

// Over s=0, e=1, s'=2, e'=3. Relations compare the underlying point sets
// (min/max) and require equal directions; a backward interval has min = end.
std::vector<std::vector<OrderAtom>> dia_rows(std::uint32_t code) {
  const std::vector<OrderAtom> fwd = {lt(0, 1), lt(2, 3)};
  const std::vector<OrderAtom> bwd = {lt(1, 0), lt(3, 2)};
  auto with = [](std::vector<OrderAtom> base, std::initializer_list<OrderAtom> more) {
    base.insert(base.end(), more);
    return base;
  };
  switch (code) {
    case dia::cb: return {with(fwd, {eq(0, 2), lt(1, 3)}), with(bwd, {eq(1, 3), lt(0, 2)})};
    case dia::cf: return {with(fwd, {eq(1, 3), lt(2, 0)}), with(bwd, {eq(0, 2), lt(3, 1)})};
    case dia::eq: return {{eq(0, 2), eq(1, 3)}};
    case dia::Eqn: return {{eq(0, 3), eq(1, 2)}};
    case dia::e: return {with(fwd, {lt(1, 2)}), with(bwd, {lt(0, 3)})};
  }
  throw DefinitionMissing("unknown DIA code " + std::to_string(code));
}

std::vector<OrderAtom> remap(const std::vector<OrderAtom>& atoms,
                             const std::array<int, 4>& slot) {
  std::vector<OrderAtom> out;
  out.reserve(atoms.size());
  for (const auto& a : atoms) {
    out.push_back(OrderAtom::make(slot[a.lhs.var_index()], a.op, slot[a.rhs.var_index()]));
  }
  return out;
}

bool eval_atoms(const std::vector<OrderAtom>& atoms, std::span<const Rational> v) {
  for (const auto& a : atoms) {
    const auto& x = v[a.lhs.var_index()];
    const auto& y = v[a.rhs.var_index()];
    switch (a.op) {
      case OrderOp::Lt: if (!(x < y)) return false; break;
      case OrderOp::Le: if (!(x <= y)) return false; break;
      case OrderOp::Eq: if (!(x == y)) return false; break;
      case OrderOp::Ne: if (!(x != y)) return false; break;
    }
  }
  return true;
}

void require_element(Structure s, const Element& e) {
  if (!element_in(s, e)) {
    throw CalculusMismatch("element " + to_string(e) + " is not in the domain of " + s.name());
  }
}

std::optional<std::uint32_t> classify_ia(const Rational& alo, const Rational& ahi,
                                         const Rational& blo, const Rational& bhi) {
  const std::array<Rational, 4> v{alo, ahi, blo, bhi};
  for (std::uint32_t c = 0; c < ia::kCount; ++c) {
    if (eval_atoms(ia_row(c), v)) return c;
  }
  return std::nullopt;
}

}  // namespace

// --- Structure ---------------------------------------------------------------

std::string Structure::name() const {
  switch (kind) {
    case StructureKind::Point: return "POINT";
    case StructureKind::IA: return "IA";
    case StructureKind::BA: return dim == 2 ? "RA" : "BA" + std::to_string(dim);
    case StructureKind::CDC: return "CDC";
    case StructureKind::DIA: return "DIA";
  }
  return "?";
}

Structure parse_structure(std::string_view text) {
  const auto t = trim(text);
  if (t == "IA") return Structure::ia();
  if (t == "RA") return Structure::ra();
  if (t == "CDC") return Structure::cdc();
  if (t == "DIA") return Structure::dia();
  if (t == "POINT") return Structure::point();
  if (t.size() > 2 && t.rfind("BA", 0) == 0) {
    const auto digits = t.substr(2);
    if (std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      const int p = std::stoi(digits);
      if (p >= 1 && p <= 6) return Structure::ba(p);
    }
  }
  throw Error("unknown calculus '" + t + "'");
}

// --- elements ------------------------------------------------------------------

Interval Interval::make(Rational lo, Rational hi) {
  if (!(lo < hi)) {
    throw Error("interval requires lo < hi, got [" + qsr::to_string(lo) + "," +
                qsr::to_string(hi) + "]");
  }
  return {lo, hi};
}

DirectedInterval DirectedInterval::make(Rational start, Rational end) {
  if (start == end) throw Error("directed interval requires start != end");
  return {start, end};
}

std::string to_string(const Element& e) {
  struct Visitor {
    std::string operator()(const Rational& q) const { return qsr::to_string(q); }
    std::string operator()(const Interval& i) const {
      return "[" + qsr::to_string(i.lo) + "," + qsr::to_string(i.hi) + "]";
    }
    std::string operator()(const Block& b) const {
      std::string out = "(";
      for (std::size_t i = 0; i < b.axes.size(); ++i) {
        if (i) out += ",";
        out += (*this)(b.axes[i]);
      }
      return out + ")";
    }
    std::string operator()(const PlanePoint& p) const {
      return "(" + qsr::to_string(p.x) + "," + qsr::to_string(p.y) + ")";
    }
    std::string operator()(const DirectedInterval& d) const {
      return qsr::to_string(d.start) + "->" + qsr::to_string(d.end);
    }
  };
  return std::visit(Visitor{}, e);
}

std::size_t slots_per_element(Structure s) {
  switch (s.kind) {
    case StructureKind::Point: return 1;
    case StructureKind::BA: return 2 * static_cast<std::size_t>(s.dim);
    default: return 2;
  }
}

std::vector<Rational> endpoints(const Element& e) {
  struct Visitor {
    std::vector<Rational> operator()(const Rational& q) const { return {q}; }
    std::vector<Rational> operator()(const Interval& i) const { return {i.lo, i.hi}; }
    std::vector<Rational> operator()(const Block& b) const {
      std::vector<Rational> out;
      for (const auto& a : b.axes) {
        out.push_back(a.lo);
        out.push_back(a.hi);
      }
      return out;
    }
    std::vector<Rational> operator()(const PlanePoint& p) const { return {p.x, p.y}; }
    std::vector<Rational> operator()(const DirectedInterval& d) const { return {d.start, d.end}; }
  };
  return std::visit(Visitor{}, e);
}

std::vector<int> slot_sorts(Structure s) {
  switch (s.kind) {
    case StructureKind::Point: return {0};
    case StructureKind::CDC: return {0, 1};
    case StructureKind::BA: {
      std::vector<int> out;
      for (int i = 0; i < s.dim; ++i) {
        out.push_back(i);
        out.push_back(i);
      }
      return out;
    }
    default: return {0, 0};
  }
}

std::vector<std::string> slot_names(Structure s, std::string_view var) {
  const std::string v(var);
  switch (s.kind) {
    case StructureKind::Point: return {v};
    case StructureKind::IA: return {v + "-", v + "+"};
    case StructureKind::CDC: return {v + ".x", v + ".y"};
    case StructureKind::DIA: return {v + ".s", v + ".e"};
    case StructureKind::BA: {
      std::vector<std::string> out;
      for (int i = 1; i <= s.dim; ++i) {
        out.push_back(v + std::to_string(i) + "-");
        out.push_back(v + std::to_string(i) + "+");
      }
      return out;
    }
  }
  return {};
}

std::vector<OrderAtom> domain_atoms(Structure s, int base) {
  switch (s.kind) {
    case StructureKind::IA: return {lt(base, base + 1)};
    case StructureKind::BA: {
      std::vector<OrderAtom> out;
      for (int i = 0; i < s.dim; ++i) out.push_back(lt(base + 2 * i, base + 2 * i + 1));
      return out;
    }
    case StructureKind::DIA: return {OrderAtom::make(base, OrderOp::Ne, base + 1)};
    default: return {};
  }
}

std::optional<Element> element_from_slots(Structure s, std::span<const Rational> v) {
  if (v.size() != slots_per_element(s)) return std::nullopt;
  switch (s.kind) {
    case StructureKind::Point: return Element{v[0]};
    case StructureKind::IA:
      if (!(v[0] < v[1])) return std::nullopt;
      return Element{Interval{v[0], v[1]}};
    case StructureKind::BA: {
      Block b;
      for (int i = 0; i < s.dim; ++i) {
        if (!(v[2 * i] < v[2 * i + 1])) return std::nullopt;
        b.axes.push_back({v[2 * i], v[2 * i + 1]});
      }
      return Element{b};
    }
    case StructureKind::CDC: return Element{PlanePoint{v[0], v[1]}};
    case StructureKind::DIA:
      if (v[0] == v[1]) return std::nullopt;
      return Element{DirectedInterval{v[0], v[1]}};
  }
  return std::nullopt;
}

bool element_in(Structure s, const Element& e) {
  switch (s.kind) {
    case StructureKind::Point: return std::holds_alternative<Rational>(e);
    case StructureKind::IA: {
      auto* i = std::get_if<Interval>(&e);
      return i && i->lo < i->hi;
    }
    case StructureKind::BA: {
      auto* b = std::get_if<Block>(&e);
      if (!b || static_cast<int>(b->dim()) != s.dim) return false;
      return std::all_of(b->axes.begin(), b->axes.end(),
                         [](const Interval& i) { return i.lo < i.hi; });
    }
    case StructureKind::CDC: return std::holds_alternative<PlanePoint>(e);
    case StructureKind::DIA: {
      auto* d = std::get_if<DirectedInterval>(&e);
      return d && d->start != d->end;
    }
  }
  return false;
}

// --- basic codes -----------------------------------------------------------------

std::uint32_t basic_count(Structure s) {
  switch (s.kind) {
    case StructureKind::IA: return ia::kCount;
    case StructureKind::BA: return pow13(s.dim);
    case StructureKind::CDC: return cdc::kCount;
    case StructureKind::DIA: return dia::kCount;
    case StructureKind::Point: return 0;
  }
  return 0;
}

BasicCode ba_code(std::span<const std::uint32_t> axis_codes) {
  std::uint32_t code = 0;
  for (auto c : axis_codes) code = code * ia::kCount + c;
  return {Structure::ba(static_cast<int>(axis_codes.size())), code};
}

std::vector<std::uint32_t> ba_axes(const BasicCode& code) {
  std::vector<std::uint32_t> out(code.calculus.dim);
  auto c = code.code;
  for (int i = code.calculus.dim - 1; i >= 0; --i) {
    out[i] = c % ia::kCount;
    c /= ia::kCount;
  }
  return out;
}

std::string BasicCode::name() const {
  switch (calculus.kind) {
    case StructureKind::IA: return std::string(kIaNames.at(code));
    case StructureKind::CDC: return std::string(kCdcNames.at(code));
    case StructureKind::DIA: return std::string(kDiaNames.at(code));
    case StructureKind::BA: {
      std::string out = "(";
      const auto axes = ba_axes(*this);
      for (std::size_t i = 0; i < axes.size(); ++i) {
        if (i) out += ",";
        out += kIaNames.at(axes[i]);
      }
      return out + ")";
    }
    case StructureKind::Point: break;
  }
  return "?";
}

BasicCode parse_basic(Structure s, std::string_view text) {
  const auto t = trim(text);
  switch (s.kind) {
    case StructureKind::IA:
      if (auto c = parse_ia_code(t)) return {s, *c};
      break;
    case StructureKind::CDC:
      for (std::uint32_t i = 0; i < cdc::kCount; ++i) {
        if (t == kCdcNames[i]) return {s, i};
      }
      break;
    case StructureKind::DIA: {
      for (std::uint32_t i = 0; i < dia::kCount; ++i) {
        if (t == kDiaNames[i]) return {s, i};
      }
      if (t == "Eq≠") return {s, dia::Eqn};
      break;
    }
    case StructureKind::BA: {
      std::string body = t;
      if (body.size() >= 2 && body.front() == '(' && body.back() == ')') {
        body = body.substr(1, body.size() - 2);
      }
      std::vector<std::uint32_t> axes;
      std::stringstream ss(body);
      std::string part;
      bool ok = true;
      while (std::getline(ss, part, ',')) {
        auto c = parse_ia_code(trim(part));
        if (!c) {
          ok = false;
          break;
        }
        axes.push_back(*c);
      }
      if (ok && static_cast<int>(axes.size()) == s.dim) {
        auto b = ba_code(axes);
        b.calculus = s;
        return b;
      }
      break;
    }
    case StructureKind::Point: break;
  }
  throw DefinitionMissing("unknown basic code '" + t + "' for " + s.name());
}

SlotFormula basic_to_point_formula(const BasicCode& code) {
  const auto& s = code.calculus;
  if (code.code >= basic_count(s)) {
    throw DefinitionMissing("no endpoint definition for code " + std::to_string(code.code) +
                            " of " + s.name());
  }
  switch (s.kind) {
    case StructureKind::IA: return {{ia_row(code.code)}};
    case StructureKind::CDC: return {{cdc_row(code.code)}};
    case StructureKind::DIA: return {dia_rows(code.code)};
    case StructureKind::BA: {
      const int p = s.dim;
      std::vector<OrderAtom> all;
      const auto axes = ba_axes(code);
      for (int i = 0; i < p; ++i) {
        const std::array<int, 4> slot{2 * i, 2 * i + 1, 2 * p + 2 * i, 2 * p + 2 * i + 1};
        auto row = remap(ia_row(axes[i]), slot);
        all.insert(all.end(), row.begin(), row.end());
      }
      return {{all}};
    }
    case StructureKind::Point: break;
  }
  throw DefinitionMissing("point structure has no basic codes");
}

bool holds(const BasicCode& code, const Element& a, const Element& b) {
  require_element(code.calculus, a);
  require_element(code.calculus, b);
  auto v = endpoints(a);
  const auto w = endpoints(b);
  v.insert(v.end(), w.begin(), w.end());
  for (const auto& alt : basic_to_point_formula(code).alternatives) {
    if (eval_atoms(alt, v)) return true;
  }
  return false;
}

std::optional<BasicCode> classify_pair(Structure s, const Element& a, const Element& b) {
  require_element(s, a);
  require_element(s, b);
  const auto va = endpoints(a);
  const auto vb = endpoints(b);
  if (s.kind == StructureKind::IA || s.kind == StructureKind::BA) {
    std::vector<std::uint32_t> axes;
    for (int i = 0; i < s.dim; ++i) {
      auto c = classify_ia(va[2 * i], va[2 * i + 1], vb[2 * i], vb[2 * i + 1]);
      if (!c) return std::nullopt;
      axes.push_back(*c);
    }
    if (s.kind == StructureKind::IA) return BasicCode{s, axes[0]};
    auto code = ba_code(axes);
    code.calculus = s;
    return code;
  }
  for (std::uint32_t c = 0; c < basic_count(s); ++c) {
    if (holds(BasicCode{s, c}, a, b)) return BasicCode{s, c};
  }
  return std::nullopt;
}

// --- QualitativeRelation -----------------------------------------------------------

QualitativeRelation::QualitativeRelation(Structure s) : calculus_(s) {
  if (s.kind == StructureKind::Point) throw CalculusMismatch("point language has no basic codes");
  if (dense()) bits_.assign((basic_count(s) + 63) / 64, 0);
}

QualitativeRelation::QualitativeRelation(Structure s, std::span<const std::uint32_t> codes)
    : QualitativeRelation(s) {
  for (auto c : codes) insert(c);
}

QualitativeRelation QualitativeRelation::full(Structure s) {
  QualitativeRelation r(s);
  for (std::uint32_t c = 0; c < basic_count(s); ++c) r.insert(c);
  return r;
}

QualitativeRelation QualitativeRelation::single(const BasicCode& code) {
  QualitativeRelation r(code.calculus);
  r.insert(code.code);
  return r;
}

bool QualitativeRelation::dense() const { return basic_count(calculus_) <= 169; }

bool QualitativeRelation::contains(std::uint32_t code) const {
  if (code >= basic_count(calculus_)) return false;
  if (dense()) return (bits_[code / 64] >> (code % 64)) & 1U;
  return std::binary_search(sparse_.begin(), sparse_.end(), code);
}

void QualitativeRelation::insert(std::uint32_t code) {
  if (code >= basic_count(calculus_)) {
    throw DefinitionMissing("code " + std::to_string(code) + " out of range for " +
                            calculus_.name());
  }
  if (dense()) {
    bits_[code / 64] |= std::uint64_t{1} << (code % 64);
    return;
  }
  auto it = std::lower_bound(sparse_.begin(), sparse_.end(), code);
  if (it == sparse_.end() || *it != code) sparse_.insert(it, code);
}

std::size_t QualitativeRelation::size() const {
  if (!dense()) return sparse_.size();
  std::size_t n = 0;
  for (auto w : bits_) n += static_cast<std::size_t>(__builtin_popcountll(w));
  return n;
}

std::vector<std::uint32_t> QualitativeRelation::codes() const {
  if (!dense()) return sparse_;
  std::vector<std::uint32_t> out;
  for (std::uint32_t c = 0; c < basic_count(calculus_); ++c) {
    if (contains(c)) out.push_back(c);
  }
  return out;
}

std::vector<BasicCode> QualitativeRelation::basics() const {
  std::vector<BasicCode> out;
  for (auto c : codes()) out.push_back({calculus_, c});
  return out;
}

std::vector<QualitativeRelation> QualitativeRelation::projections() const {
  if (calculus_.kind != StructureKind::BA) return {*this};
  std::vector<QualitativeRelation> out(calculus_.dim, QualitativeRelation(Structure::ia()));
  for (const auto& b : basics()) {
    const auto axes = ba_axes(b);
    for (int i = 0; i < calculus_.dim; ++i) out[i].insert(axes[i]);
  }
  return out;
}

bool QualitativeRelation::is_product() const {
  if (calculus_.kind != StructureKind::BA) return true;
  std::size_t product = 1;
  for (const auto& p : projections()) product *= p.size();
  return product == size();
}

std::string QualitativeRelation::to_string() const {
  std::string out = "{";
  for (const auto& b : basics()) out += " " + b.name();
  return out + " }";
}

bool operator==(const QualitativeRelation& a, const QualitativeRelation& b) {
  return a.calculus_ == b.calculus_ && a.codes() == b.codes();
}

QualitativeRelation parse_relation(Structure s, std::string_view text) {
  auto t = trim(text);
  if (!t.empty() && t.front() == '{') {
    if (t.back() != '}') throw Error("unterminated relation '" + t + "'");
    t = t.substr(1, t.size() - 2);
  }
  QualitativeRelation r(s);
  std::stringstream ss(t);
  std::string token;
  while (ss >> token) {
    if (s.kind == StructureKind::BA &&
        (token.find('*') != std::string::npos || token.find("⊤") != std::string::npos)) {
      // Per-axis wildcard, e.g. (s,*) for every code whose first axis is s.
      std::string body = token;
      if (body.size() >= 2 && body.front() == '(' && body.back() == ')') {
        body = body.substr(1, body.size() - 2);
      }
      std::vector<std::vector<std::uint32_t>> choices;
      std::stringstream parts(body);
      std::string part;
      while (std::getline(parts, part, ',')) {
        part = trim(part);
        std::vector<std::uint32_t> c;
        if (part == "*" || part == "⊤") {
          for (std::uint32_t i = 0; i < ia::kCount; ++i) c.push_back(i);
        } else if (auto code = parse_ia_code(part)) {
          c.push_back(*code);
        } else {
          throw Error("unknown interval code '" + part + "' in '" + token + "'");
        }
        choices.push_back(std::move(c));
      }
      if (static_cast<int>(choices.size()) != s.dim) throw Error("wrong arity in '" + token + "'");
      std::vector<std::uint32_t> axes(choices.size());
      std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == choices.size()) {
          r.insert(ba_code(axes).code);
          return;
        }
        for (auto c : choices[i]) {
          axes[i] = c;
          rec(i + 1);
        }
      };
      rec(0);
      continue;
    }
    r.insert(parse_basic(s, token).code);
  }
  return r;
}

BasicCode converse(const BasicCode& code) {
  const auto& s = code.calculus;
  switch (s.kind) {
    case StructureKind::IA:
      return {s, code.code == ia::eq ? ia::eq : (code.code ^ 1U)};
    case StructureKind::CDC: {
      static constexpr std::array<std::uint32_t, cdc::kCount> kConv = {
          cdc::S, cdc::N, cdc::W, cdc::E, cdc::SW, cdc::NW, cdc::NE, cdc::SE};
      return {s, kConv.at(code.code)};
    }
    case StructureKind::DIA:
      if (code.code == dia::eq || code.code == dia::Eqn) return code;
      throw DefinitionMissing("converse of " + code.name() +
                              " lies outside the supported DIA fragment");
    case StructureKind::BA: {
      auto axes = ba_axes(code);
      for (auto& a : axes) a = converse(BasicCode{Structure::ia(), a}).code;
      auto c = ba_code(axes);
      c.calculus = s;
      return c;
    }
    case StructureKind::Point: break;
  }
  throw CalculusMismatch("no converse in the point language");
}

QualitativeRelation converse(const QualitativeRelation& r) {
  QualitativeRelation out(r.calculus());
  for (const auto& b : r.basics()) out.insert(converse(b).code);
  return out;
}

namespace {
void require_same(const QualitativeRelation& a, const QualitativeRelation& b) {
  if (!(a.calculus() == b.calculus())) {
    throw CalculusMismatch("relations over " + a.calculus().name() + " and " +
                           b.calculus().name());
  }
}
}  // namespace

QualitativeRelation intersect(const QualitativeRelation& a, const QualitativeRelation& b) {
  require_same(a, b);
  QualitativeRelation out(a.calculus());
  for (auto c : a.codes()) {
    if (b.contains(c)) out.insert(c);
  }
  return out;
}

QualitativeRelation unite(const QualitativeRelation& a, const QualitativeRelation& b) {
  require_same(a, b);
  QualitativeRelation out = a;
  for (auto c : b.codes()) out.insert(c);
  return out;
}

QualitativeRelation complement(const QualitativeRelation& r) {
  QualitativeRelation out(r.calculus());
  for (std::uint32_t c = 0; c < basic_count(r.calculus()); ++c) {
    if (!r.contains(c)) out.insert(c);
  }
  return out;
}

namespace {

using Table = std::vector<std::vector<std::vector<std::uint32_t>>>;

// table[r][s] = codes t with a t c for some a r b, b s c; built by enumerating
// the order types of three elements' endpoints.
Table build_table(Structure s) {
  const auto n = basic_count(s);
  Table table(n, std::vector<std::vector<std::uint32_t>>(n));
  const auto per = slots_per_element(s);
  std::vector<int> sorts;
  for (int e = 0; e < 3; ++e) {
    for (int srt : slot_sorts(s)) sorts.push_back(srt);
  }
  for (const auto& w : enumerate_weak_orders(sorts)) {
    std::vector<Rational> v;
    for (auto r : w.ranks()) v.emplace_back(r);
    auto a = element_from_slots(s, std::span(v).subspan(0, per));
    auto b = element_from_slots(s, std::span(v).subspan(per, per));
    auto c = element_from_slots(s, std::span(v).subspan(2 * per, per));
    if (!a || !b || !c) continue;
    auto ab = classify_pair(s, *a, *b);
    auto bc = classify_pair(s, *b, *c);
    auto ac = classify_pair(s, *a, *c);
    if (!ab || !bc || !ac) continue;
    auto& cell = table[ab->code][bc->code];
    if (std::find(cell.begin(), cell.end(), ac->code) == cell.end()) cell.push_back(ac->code);
  }
  for (auto& row : table) {
    for (auto& cell : row) std::sort(cell.begin(), cell.end());
  }
  return table;
}

const Table& table_for(StructureKind kind) {
  static std::once_flag ia_once, cdc_once, dia_once;
  static Table ia_table, cdc_table, dia_table;
  switch (kind) {
    case StructureKind::CDC:
      std::call_once(cdc_once, [] { cdc_table = build_table(Structure::cdc()); });
      return cdc_table;
    case StructureKind::DIA:
      std::call_once(dia_once, [] { dia_table = build_table(Structure::dia()); });
      return dia_table;
    default:
      std::call_once(ia_once, [] { ia_table = build_table(Structure::ia()); });
      return ia_table;
  }
}

}  // namespace

QualitativeRelation compose(const QualitativeRelation& r, const QualitativeRelation& s) {
  require_same(r, s);
  const auto calc = r.calculus();
  QualitativeRelation out(calc);
  if (calc.kind != StructureKind::BA) {
    const auto& table = table_for(calc.kind);
    for (auto a : r.codes()) {
      for (auto b : s.codes()) {
        for (auto c : table[a][b]) out.insert(c);
      }
    }
    return out;
  }
  if (calc.dim > 3) {
    throw CapExceeded("composition for BA" + std::to_string(calc.dim) + " is not supported");
  }
  // Axes are independent: a basic pair composes to the product of the
  // per-axis IA compositions.
  const auto& table = table_for(StructureKind::IA);
  for (const auto& a : r.basics()) {
    const auto ax = ba_axes(a);
    for (const auto& b : s.basics()) {
      const auto bx = ba_axes(b);
      std::vector<std::uint32_t> digits(calc.dim, 0);
      std::vector<std::size_t> idx(calc.dim, 0);
      bool empty = false;
      for (int i = 0; i < calc.dim; ++i) empty |= table[ax[i]][bx[i]].empty();
      if (empty) continue;
      while (true) {
        for (int i = 0; i < calc.dim; ++i) digits[i] = table[ax[i]][bx[i]][idx[i]];
        out.insert(ba_code(digits).code);
        int i = calc.dim - 1;
        while (i >= 0 && ++idx[i] == table[ax[i]][bx[i]].size()) {
          idx[i] = 0;
          --i;
        }
        if (i < 0) break;
      }
    }
  }
  return out;
}

Block apply_translation(const Block& b, std::span<const Rational> offsets) {
  if (offsets.size() != b.dim()) {
    throw Error("translation needs " + std::to_string(b.dim()) + " offsets, got " +
                std::to_string(offsets.size()));
  }
  Block out = b;
  for (std::size_t i = 0; i < b.dim(); ++i) {
    out.axes[i].lo += offsets[i];
    out.axes[i].hi += offsets[i];
  }
  return out;
}

Element translate_element(const Element& e, std::span<const Rational> offsets) {
  struct Visitor {
    std::span<const Rational> q;
    Element operator()(const Rational& x) const { return x + q[0]; }
    Element operator()(const Interval& i) const { return Interval{i.lo + q[0], i.hi + q[0]}; }
    Element operator()(const Block& b) const { return apply_translation(b, q); }
    Element operator()(const PlanePoint& p) const { return PlanePoint{p.x + q[0], p.y + q[1]}; }
    Element operator()(const DirectedInterval& d) const {
      return DirectedInterval{d.start + q[0], d.end + q[0]};
    }
  };
  const std::size_t need = std::holds_alternative<Block>(e)
                               ? std::get<Block>(e).dim()
                               : (std::holds_alternative<PlanePoint>(e) ? 2 : 1);
  if (offsets.size() != need) throw Error("wrong number of translation offsets");
  return std::visit(Visitor{offsets}, e);
}

}  // namespace qsr
