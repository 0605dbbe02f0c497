#include "qsr/interpretation.hpp"

#include <algorithm>
#include <random>

#include "qsr/error.hpp"
#include "qsr/kernels.hpp"

namespace qsr {

const PPFormula& Interpretation::relation(std::string_view symbol) const {
  const auto it = relations.find(std::string(symbol));
  if (it == relations.end()) {
    throw DefinitionMissing(name + " has no formula for '" + std::string(symbol) + "'");
  }
  return it->second;
}

bool Interpretation::has_relation(std::string_view symbol) const {
  return relations.count(std::string(symbol)) > 0;
}

namespace {

// Accumulates a pp-formula over the base structure from instantiated pieces.
class Builder {
 public:
  Builder(Structure base, int free_count) {
    out_.structure = base;
    for (int i = 0; i < free_count; ++i) out_.free.push_back("x" + std::to_string(i + 1));
  }

  void instantiate(const PPFormula& g, std::span<const int> binding) {
    if (binding.size() != g.free.size()) throw Error("binding arity mismatch in composition");
    const int base = static_cast<int>(out_.free.size());
    std::vector<int> ids(binding.begin(), binding.end());
    for (const auto& e : g.exists) {
      ids.push_back(base + static_cast<int>(out_.exists.size()));
      out_.exists.push_back(e + "_" + std::to_string(++fresh_));
    }
    for (auto atom : g.atoms) {
      for (auto& a : atom.args) a = ids[a];
      out_.atoms.push_back(std::move(atom));
    }
  }

  PPFormula take() { return std::move(out_); }

 private:
  PPFormula out_;
  int fresh_ = 0;
};

std::string order_symbol(OrderOp op) {
  switch (op) {
    case OrderOp::Lt: return "<";
    case OrderOp::Le: return "<=";
    case OrderOp::Eq: return "=";
    case OrderOp::Ne: break;
  }
  throw Error("disequality is not a pp atom");
}

// Formula for `sym` between two outer variables read through inner[pa], inner[pb].
PPFormula atom_formula(std::span<const Interpretation> inner, int pa, int pb,
                       const std::string& sym) {
  if (pa == pb) return inner[pa].relation(sym);
  if (auto f = catalog().cross(inner[pa].name, inner[pb].name, sym)) return *f;
  throw DefinitionMissing("no formula for " + inner[pa].name + " " + sym + " " +
                          inner[pb].name);
}

// Rewrites an outer formula whose free variable t is read through inner[t % j].
PPFormula substitute(const PPFormula& phi, std::span<const Interpretation> inner) {
  if (!phi.exists.empty()) {
    throw StructureMismatch("outer formula has existential variables without a coordinate");
  }
  const int j = static_cast<int>(inner.size());
  const int i = inner.front().dimension;
  Builder b(inner.front().source, static_cast<int>(phi.free.size()) * i);
  auto block = [&](int t) {
    std::vector<int> v;
    for (int r = 0; r < i; ++r) v.push_back(t * i + r);
    return v;
  };
  for (const auto& atom : phi.atoms) {
    std::vector<int> binding;
    for (int t : atom.args) {
      const auto bl = block(t);
      binding.insert(binding.end(), bl.begin(), bl.end());
    }
    const int pa = atom.args[0] % j;
    switch (atom.kind) {
      case PPAtom::Kind::Order:
        b.instantiate(atom_formula(inner, pa, atom.args[1] % j, order_symbol(atom.op)), binding);
        break;
      case PPAtom::Kind::Equal:
        b.instantiate(atom_formula(inner, pa, atom.args[1] % j, "="), binding);
        break;
      case PPAtom::Kind::Forw:
        b.instantiate(inner[pa].relation("forw"), binding);
        break;
      case PPAtom::Kind::Relation: {
        const auto codes = atom.relation.basics();
        if (codes.size() != 1) {
          throw DefinitionMissing("disjunctive atom " + atom.relation.to_string() +
                                  " in an outer formula");
        }
        b.instantiate(atom_formula(inner, pa, atom.args[1] % j, codes[0].name()), binding);
        break;
      }
    }
  }
  return b.take();
}

}  // namespace

Interpretation compose(const Interpretation& outer, std::span<const Interpretation> inner) {
  if (static_cast<int>(inner.size()) != outer.dimension) {
    throw StructureMismatch(outer.name + " needs " + std::to_string(outer.dimension) +
                            " inner interpretations");
  }
  const auto& first = inner.front();
  for (const auto& in : inner) {
    if (!(in.target == outer.source)) {
      throw StructureMismatch(in.name + " does not interpret " + outer.source.name());
    }
    if (!(in.source == first.source) || in.dimension != first.dimension) {
      throw StructureMismatch("inner interpretations disagree on base structure or dimension");
    }
  }
  const int j = outer.dimension;
  const int i = first.dimension;

  Interpretation r;
  r.name = outer.name + "∘(";
  for (std::size_t c = 0; c < inner.size(); ++c) r.name += (c ? "," : "") + inner[c].name;
  r.name += ")";
  r.source = first.source;
  r.target = outer.target;
  r.dimension = j * i;

  Builder dom(r.source, j * i);
  for (int c = 0; c < j; ++c) {
    std::vector<int> binding;
    for (int q = 0; q < i; ++q) binding.push_back(c * i + q);
    dom.instantiate(inner[c].domain, binding);
  }
  {
    std::vector<int> binding(j * i);
    for (int q = 0; q < j * i; ++q) binding[q] = q;
    dom.instantiate(substitute(outer.domain, inner), binding);
  }
  r.domain = dom.take();

  for (const auto& [sym, phi] : outer.relations) {
    try {
      r.relations.emplace(sym, substitute(phi, inner));
    } catch (const DefinitionMissing& e) {
      r.notes.push_back("'" + sym + "' omitted: " + e.what());
    }
  }

  std::vector<CoordinateMap> maps;
  for (const auto& in : inner) maps.push_back(in.coordinate_map);
  r.coordinate_map = [maps, h = outer.coordinate_map, i,
                      j](std::span<const Element> xs) -> std::optional<Element> {
    if (static_cast<int>(xs.size()) != i * j) return std::nullopt;
    std::vector<Element> mid;
    for (int c = 0; c < j; ++c) {
      auto v = maps[c](xs.subspan(c * i, i));
      if (!v) return std::nullopt;
      mid.push_back(std::move(*v));
    }
    return h(mid);
  };
  for (const auto& in : inner) {
    for (const auto& n : in.notes) r.notes.push_back(in.name + ": " + n);
  }
  for (const auto& n : outer.notes) r.notes.push_back(outer.name + ": " + n);
  return r;
}

// --- homotopy ----------------------------------------------------------------

SampleVerdict check_homotopy_sample(const HomotopyWitness& w, std::span<const Element> sample) {
  try {
    const auto base = w.composed.source;
    if (sample.size() + 1 != w.theta.free.size()) return SampleVerdict::Invalid;
    for (const auto& e : sample) {
      if (!element_in(base, e)) return SampleVerdict::Invalid;
    }
    // theta's free variables: x0 first, then the inputs.
    auto with_inputs = [&](PPProblem& p, int z) {
      std::vector<int> binding{z};
      for (const auto& e : sample) {
        const int id = p.add_element();
        p.fix(id, e);
        binding.push_back(id);
      }
      p.add(w.theta, binding);
      return binding;
    };
    if (!eval_pp_formula(w.composed.domain, sample)) return SampleVerdict::OutsideDomain;
    {
      PPProblem p(base);
      with_inputs(p, p.add_element());
      if (!p.solve()) return SampleVerdict::OutsideWitness;
    }
    const auto image = w.composed.coordinate_map(sample);
    if (!image || !element_in(base, *image)) return SampleVerdict::NoImage;
    {
      std::vector<Element> args{*image};
      args.insert(args.end(), sample.begin(), sample.end());
      if (!eval_pp_formula(w.theta, args)) return SampleVerdict::ThetaRejectsImage;
    }
    const int slots = static_cast<int>(slots_per_element(base));
    for (int k = 0; k < slots; ++k) {
      PPProblem p(base);
      const int z1 = p.add_element();
      const int z2 = p.add_element();
      auto binding = with_inputs(p, z1);
      binding[0] = z2;
      p.add(w.theta, binding);
      p.add_slot_atom(OrderAtom::make(p.slot(z1, k), OrderOp::Ne, p.slot(z2, k)));
      if (p.solve()) return SampleVerdict::NotUnique;
    }
    return SampleVerdict::Ok;
  } catch (const Error&) {
    return SampleVerdict::Invalid;
  }
}

HomotopyReport check_homotopy_identity(const HomotopyWitness& w,
                                       std::span<const std::vector<Element>> samples) {
  HomotopyReport rep;
  const auto verdicts = kernels::homotopy_verdicts_omp(w, samples);
  std::size_t outside = 0, partial = 0, invalid = 0;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const auto v = verdicts[s];
    if (v == SampleVerdict::OutsideDomain || v == SampleVerdict::OutsideWitness) {
      ++rep.skipped;
      ++(v == SampleVerdict::OutsideDomain ? outside : partial);
      continue;
    }
    if (v == SampleVerdict::Invalid) {
      ++rep.skipped;
      ++invalid;
      continue;
    }
    ++rep.checked;
    if (v == SampleVerdict::Ok) continue;
    ++rep.counterexamples;
    if (v == SampleVerdict::NotUnique) rep.unique_everywhere = false;
    if (!rep.first_counterexample) {
      std::string text;
      for (const auto& e : samples[s]) text += (text.empty() ? "" : ", ") + to_string(e);
      const char* why = v == SampleVerdict::NotUnique       ? "theta has several solutions"
                        : v == SampleVerdict::NoImage       ? "coordinate map undefined"
                                                            : "theta rejects the image";
      rep.first_counterexample = "(" + text + "): " + why;
    }
  }
  if (outside) {
    rep.notices.push_back(std::to_string(outside) +
                          " sample(s) outside the composed domain were skipped");
  }
  if (partial) {
    rep.notices.push_back(std::to_string(partial) +
                          " sample(s) inside the composed domain admit no theta solution;"
                          " skipped");
  }
  if (invalid) {
    rep.notices.push_back(std::to_string(invalid) + " malformed sample(s) were skipped");
  }
  return rep;
}

Element random_element(Structure s, std::mt19937_64& rng, int range) {
  std::uniform_int_distribution<int> d(0, range - 1);
  auto pair = [&] {
    int a = d(rng), b = d(rng);
    while (a == b) b = d(rng);
    return std::pair{a, b};
  };
  switch (s.kind) {
    case StructureKind::Point: return Rational(d(rng));
    case StructureKind::IA: {
      auto [a, b] = pair();
      return Interval::make(std::min(a, b), std::max(a, b));
    }
    case StructureKind::BA: {
      Block bl;
      for (int i = 0; i < s.dim; ++i) {
        auto [a, b] = pair();
        bl.axes.push_back(Interval::make(std::min(a, b), std::max(a, b)));
      }
      return bl;
    }
    case StructureKind::CDC: return PlanePoint{d(rng), d(rng)};
    case StructureKind::DIA: {
      auto [a, b] = pair();
      return DirectedInterval::make(a, b);
    }
  }
  throw Error("unknown structure");
}

std::vector<std::vector<Element>> homotopy_samples(const HomotopyWitness& w, std::size_t count,
                                                   std::uint64_t seed, int range,
                                                   std::size_t max_attempts) {
  std::mt19937_64 rng(seed);
  const auto n = w.theta.free.size() - 1;
  std::vector<std::vector<Element>> out;
  for (std::size_t attempt = 0; attempt < max_attempts && out.size() < count; ++attempt) {
    std::vector<Element> s;
    for (std::size_t k = 0; k < n; ++k) s.push_back(random_element(w.composed.source, rng, range));
    const auto v = check_homotopy_sample(w, s);
    if (v != SampleVerdict::OutsideDomain && v != SampleVerdict::OutsideWitness) {
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace qsr
