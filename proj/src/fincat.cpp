#include "wdsec/fincat.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace wdsec::fincat {
namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);
constexpr std::size_t kCandidateLimit = 50'000'000;

// Index form of a structurally valid category.
struct Indexed {
  std::vector<std::string> objects;
  std::vector<std::string> morphisms;
  std::unordered_map<std::string, std::size_t> obj_index;
  std::unordered_map<std::string, std::size_t> mor_index;
  std::vector<std::size_t> src, tgt;
  std::vector<std::size_t> identity;  // per object
  std::vector<std::size_t> comp;      // g * n + f -> g o f, kNone if not composable

  std::size_t compose(std::size_t g, std::size_t f) const { return comp[g * morphisms.size() + f]; }
};

// Builds the index and appends structural problems to `report`.
Indexed index_category(const FinCategory& cat, Report& report) {
  Indexed ix;
  for (const auto& o : cat.objects) {
    if (!ix.obj_index.emplace(o, ix.objects.size()).second)
      report.error("structure", "duplicate object '" + o + "'");
    else
      ix.objects.push_back(o);
  }
  for (const auto& m : cat.morphisms) {
    if (ix.mor_index.count(m.id)) {
      report.error("structure", "duplicate morphism '" + m.id + "'");
      continue;
    }
    const auto s = ix.obj_index.find(m.src);
    const auto t = ix.obj_index.find(m.tgt);
    if (s == ix.obj_index.end())
      report.error("structure", "morphism '" + m.id + "' has dangling source '" + m.src + "'");
    if (t == ix.obj_index.end())
      report.error("structure", "morphism '" + m.id + "' has dangling target '" + m.tgt + "'");
    if (s == ix.obj_index.end() || t == ix.obj_index.end()) continue;
    ix.mor_index.emplace(m.id, ix.morphisms.size());
    ix.morphisms.push_back(m.id);
    ix.src.push_back(s->second);
    ix.tgt.push_back(t->second);
  }

  ix.identity.assign(ix.objects.size(), kNone);
  for (const auto& [obj, id] : cat.identity) {
    const auto o = ix.obj_index.find(obj);
    const auto m = ix.mor_index.find(id);
    if (o == ix.obj_index.end()) {
      report.error("structure", "identity declared for unknown object '" + obj + "'");
      continue;
    }
    if (m == ix.mor_index.end()) {
      report.error("structure", "identity of '" + obj + "' is unknown morphism '" + id + "'");
      continue;
    }
    if (ix.src[m->second] != o->second || ix.tgt[m->second] != o->second) {
      report.error("structure", "identity '" + id + "' of '" + obj + "' is not an endomorphism of it");
      continue;
    }
    ix.identity[o->second] = m->second;
  }
  for (std::size_t o = 0; o < ix.objects.size(); ++o)
    if (ix.identity[o] == kNone && !cat.identity.count(ix.objects[o]))
      report.error("structure", "object '" + ix.objects[o] + "' has no identity");

  const auto n = ix.morphisms.size();
  ix.comp.assign(n * n, kNone);
  for (const auto& e : cat.composition) {
    const auto g = ix.mor_index.find(e.g);
    const auto f = ix.mor_index.find(e.f);
    const auto r = ix.mor_index.find(e.result);
    const std::string label = e.g + " o " + e.f + " = " + e.result;
    if (g == ix.mor_index.end() || f == ix.mor_index.end() || r == ix.mor_index.end()) {
      report.error("structure", "composite " + label + " references an unknown morphism");
      continue;
    }
    if (ix.src[g->second] != ix.tgt[f->second]) {
      report.error("structure", "composite " + label + " given for a non-composable pair");
      continue;
    }
    if (ix.src[r->second] != ix.src[f->second] || ix.tgt[r->second] != ix.tgt[g->second]) {
      report.error("structure", "composite " + label + " has the wrong source or target");
      continue;
    }
    auto& slot = ix.comp[g->second * n + f->second];
    if (slot != kNone && slot != r->second) {
      report.error("structure", "composite " + e.g + " o " + e.f + " is defined twice");
      continue;
    }
    slot = r->second;
  }
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t f = 0; f < n; ++f)
      if (ix.src[g] == ix.tgt[f] && ix.comp[g * n + f] == kNone)
        report.error("structure",
                     "missing composite " + ix.morphisms[g] + " o " + ix.morphisms[f]);
  return ix;
}

void check_laws(const Indexed& ix, Report& report) {
  const auto n = ix.morphisms.size();
  for (std::size_t f = 0; f < n; ++f) {
    const auto left = ix.identity[ix.tgt[f]];
    const auto right = ix.identity[ix.src[f]];
    if (ix.compose(left, f) != f)
      report.error("identity", ix.morphisms[left] + " o " + ix.morphisms[f] + " != " + ix.morphisms[f]);
    if (ix.compose(f, right) != f)
      report.error("identity", ix.morphisms[f] + " o " + ix.morphisms[right] + " != " + ix.morphisms[f]);
  }
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t g = 0; g < n; ++g) {
      if (ix.src[h] != ix.tgt[g]) continue;
      for (std::size_t f = 0; f < n; ++f) {
        if (ix.src[g] != ix.tgt[f]) continue;
        const auto lhs = ix.compose(h, ix.compose(g, f));
        const auto rhs = ix.compose(ix.compose(h, g), f);
        if (lhs != rhs)
          report.error("associativity", ix.morphisms[h] + " o (" + ix.morphisms[g] + " o " +
                                            ix.morphisms[f] + ") != (" + ix.morphisms[h] + " o " +
                                            ix.morphisms[g] + ") o " + ix.morphisms[f]);
      }
    }
}

void sort_report(Report& r) {
  std::sort(r.items.begin(), r.items.end(), [](const Diagnostic& a, const Diagnostic& b) {
    return std::tie(a.severity, a.category, a.message) < std::tie(b.severity, b.category, b.message);
  });
  r.items.erase(std::unique(r.items.begin(), r.items.end()), r.items.end());
}

Indexed require_category(const FinCategory& cat) {
  auto report = validate_category(cat);
  if (!report.ok()) throw ValidationError("invalid category '" + cat.name + "'", report);
  Report scratch;
  return index_category(cat, scratch);
}

// Index form of a functor over an Indexed category.
struct IndexedFunctor {
  std::vector<std::vector<std::string>> sets;   // per object
  std::vector<std::vector<std::size_t>> maps;   // per morphism: element index -> element index
};

IndexedFunctor index_functor(const Indexed& ix, const FinSetFunctor& f, Report& report) {
  IndexedFunctor out;
  out.sets.resize(ix.objects.size());
  out.maps.resize(ix.morphisms.size());
  for (const auto& [obj, _] : f.object_map)
    if (!ix.obj_index.count(obj))
      report.error("structure", "functor '" + f.name + "' maps unknown object '" + obj + "'");
  for (const auto& [mor, _] : f.morphism_map)
    if (!ix.mor_index.count(mor))
      report.error("structure", "functor '" + f.name + "' maps unknown morphism '" + mor + "'");

  std::vector<std::unordered_map<std::string, std::size_t>> elem_index(ix.objects.size());
  for (std::size_t o = 0; o < ix.objects.size(); ++o) {
    const auto it = f.object_map.find(ix.objects[o]);
    if (it == f.object_map.end()) {
      report.error("structure", "functor '" + f.name + "' has no set for object '" + ix.objects[o] + "'");
      continue;
    }
    out.sets[o] = it->second;
    for (const auto& e : it->second)
      if (!elem_index[o].emplace(e, elem_index[o].size()).second)
        report.error("structure", "functor '" + f.name + "' repeats element '" + e + "' at '" +
                                      ix.objects[o] + "'");
  }
  for (std::size_t m = 0; m < ix.morphisms.size(); ++m) {
    const auto it = f.morphism_map.find(ix.morphisms[m]);
    if (it == f.morphism_map.end()) {
      report.error("structure", "functor '" + f.name + "' has no function for morphism '" +
                                    ix.morphisms[m] + "'");
      continue;
    }
    const auto& from = out.sets[ix.src[m]];
    auto& map = out.maps[m];
    map.assign(from.size(), kNone);
    for (const auto& [x, y] : it->second) {
      const auto xi = elem_index[ix.src[m]].find(x);
      const auto yi = elem_index[ix.tgt[m]].find(y);
      if (xi == elem_index[ix.src[m]].end() || yi == elem_index[ix.tgt[m]].end()) {
        report.error("structure", "functor '" + f.name + "': " + ix.morphisms[m] + "(" + x +
                                      ") = " + y + " leaves the mapped sets");
        continue;
      }
      map[xi->second] = yi->second;
    }
    for (std::size_t x = 0; x < from.size(); ++x)
      if (map[x] == kNone)
        report.error("structure", "functor '" + f.name + "': " + ix.morphisms[m] +
                                      " is not defined on '" + from[x] + "'");
  }
  return out;
}

void check_functor_laws(const Indexed& ix, const IndexedFunctor& fx, const std::string& name,
                        Report& report) {
  for (std::size_t o = 0; o < ix.objects.size(); ++o) {
    const auto& id = fx.maps[ix.identity[o]];
    for (std::size_t x = 0; x < id.size(); ++x)
      if (id[x] != x)
        report.error("identity", "functor '" + name + "' moves '" + fx.sets[o][x] +
                                     "' under the identity of '" + ix.objects[o] + "'");
  }
  const auto n = ix.morphisms.size();
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t f = 0; f < n; ++f) {
      if (ix.src[g] != ix.tgt[f]) continue;
      const auto& gf = fx.maps[ix.compose(g, f)];
      for (std::size_t x = 0; x < gf.size(); ++x)
        if (gf[x] != fx.maps[g][fx.maps[f][x]])
          report.error("composition", "functor '" + name + "': F(" + ix.morphisms[g] + " o " +
                                          ix.morphisms[f] + ") != F(" + ix.morphisms[g] +
                                          ") o F(" + ix.morphisms[f] + ")");
    }
}

IndexedFunctor require_functor(const Indexed& ix, const FinCategory& cat, const FinSetFunctor& f) {
  auto report = validate_functor(cat, f);
  if (!report.ok()) throw ValidationError("invalid functor '" + f.name + "'", report);
  Report scratch;
  return index_functor(ix, f, scratch);
}

struct NatSearch {
  const Indexed& ix;
  const IndexedFunctor& f;
  const IndexedFunctor& g;
  std::vector<std::size_t> slot_object;  // per slot: object
  std::vector<std::size_t> slot_offset;  // per object: first slot
  std::vector<std::size_t> radix;        // per slot: |G(object)|

  NatSearch(const Indexed& ix_, const IndexedFunctor& f_, const IndexedFunctor& g_)
      : ix(ix_), f(f_), g(g_) {
    for (std::size_t o = 0; o < ix.objects.size(); ++o) {
      slot_offset.push_back(slot_object.size());
      for (std::size_t x = 0; x < f.sets[o].size(); ++x) {
        slot_object.push_back(o);
        radix.push_back(g.sets[o].size());
      }
    }
  }

  std::size_t candidates() const {
    std::size_t n = 1;
    for (auto r : radix) {
      if (r == 0) return 0;
      if (n > kCandidateLimit / r)
        throw PreconditionError("natural transformation search space exceeds " +
                                std::to_string(kCandidateLimit) + " candidates");
      n *= r;
    }
    return n;
  }

  std::vector<std::size_t> decode(std::size_t index) const {
    std::vector<std::size_t> code(radix.size());
    for (std::size_t i = radix.size(); i-- > 0;) {
      code[i] = index % radix[i];
      index /= radix[i];
    }
    return code;
  }

  bool natural(const std::vector<std::size_t>& code) const {
    for (std::size_t m = 0; m < ix.morphisms.size(); ++m) {
      const auto a = ix.src[m];
      const auto b = ix.tgt[m];
      for (std::size_t x = 0; x < f.sets[a].size(); ++x) {
        const auto lhs = code[slot_offset[b] + f.maps[m][x]];
        const auto rhs = g.maps[m][code[slot_offset[a] + x]];
        if (lhs != rhs) return false;
      }
    }
    return true;
  }

  NatTransformation materialize(std::vector<std::size_t> code) const {
    NatTransformation eta;
    for (std::size_t o = 0; o < ix.objects.size(); ++o) {
      auto& comp = eta.components[ix.objects[o]];
      for (std::size_t x = 0; x < f.sets[o].size(); ++x)
        comp[f.sets[o][x]] = g.sets[o][code[slot_offset[o] + x]];
    }
    eta.code = std::move(code);
    return eta;
  }
};

}  // namespace

Report validate_category(const FinCategory& cat) {
  Report report;
  const auto ix = index_category(cat, report);
  if (report.ok()) check_laws(ix, report);
  sort_report(report);
  return report;
}

Report validate_functor(const FinCategory& cat, const FinSetFunctor& f) {
  const auto ix = require_category(cat);
  Report report;
  const auto fx = index_functor(ix, f, report);
  if (report.ok()) check_functor_laws(ix, fx, f.name, report);
  sort_report(report);
  return report;
}

FinSetFunctor hom_functor(const FinCategory& cat, const std::string& object) {
  const auto ix = require_category(cat);
  const auto a = ix.obj_index.find(object);
  if (a == ix.obj_index.end()) throw PreconditionError("unknown object '" + object + "'");
  FinSetFunctor h;
  h.name = "Hom(" + object + ",-)";
  for (std::size_t b = 0; b < ix.objects.size(); ++b) {
    std::vector<std::string> homs;
    for (std::size_t m = 0; m < ix.morphisms.size(); ++m)
      if (ix.src[m] == a->second && ix.tgt[m] == b) homs.push_back(ix.morphisms[m]);
    std::sort(homs.begin(), homs.end());
    h.object_map[ix.objects[b]] = std::move(homs);
  }
  for (std::size_t g = 0; g < ix.morphisms.size(); ++g) {
    auto& fn = h.morphism_map[ix.morphisms[g]];
    for (const auto& fid : h.object_map[ix.objects[ix.src[g]]])
      fn[fid] = ix.morphisms[ix.compose(g, ix.mor_index.at(fid))];
  }
  return h;
}

std::vector<NatTransformation> enumerate_nat(const FinCategory& cat, const FinSetFunctor& f,
                                             const FinSetFunctor& g, kernels::Exec exec) {
  const auto ix = require_category(cat);
  const auto fx = require_functor(ix, cat, f);
  const auto gx = require_functor(ix, cat, g);
  const NatSearch search(ix, fx, gx);
  const auto hits = kernels::filter_indices(
      search.candidates(), [&](std::size_t i) { return search.natural(search.decode(i)); }, exec);
  std::vector<NatTransformation> out;
  out.reserve(hits.size());
  // Mixed-radix order with the first slot most significant is lexicographic on codes.
  for (auto i : hits) out.push_back(search.materialize(search.decode(i)));
  return out;
}

bool is_natural(const FinCategory& cat, const FinSetFunctor& f, const FinSetFunctor& g,
                const NatTransformation& eta) {
  for (const auto& m : cat.morphisms) {
    const auto& ca = eta.components.at(m.src);
    const auto& cb = eta.components.at(m.tgt);
    for (const auto& x : f.object_map.at(m.src)) {
      const auto lhs = cb.at(f.morphism_map.at(m.id).at(x));
      const auto rhs = g.morphism_map.at(m.id).at(ca.at(x));
      if (lhs != rhs) return false;
    }
  }
  return true;
}

YonedaWitness yoneda_check(const FinCategory& cat, const std::string& object,
                           const FinSetFunctor& f) {
  const auto hom = hom_functor(cat, object);
  const auto nats = enumerate_nat(cat, hom, f);
  const auto ix = require_category(cat);
  const auto& id_a = ix.morphisms[ix.identity[ix.obj_index.at(object)]];
  const auto& fa = f.object_map.at(object);

  YonedaWitness w;
  w.object = object;
  w.nat_count = nats.size();
  w.element_count = fa.size();
  std::set<std::string> image;
  for (std::size_t i = 0; i < nats.size(); ++i) {
    const auto& x = nats[i].components.at(object).at(id_a);
    w.pairs.emplace_back(i, x);
    if (!image.insert(x).second)
      throw YonedaFailure("two transformations send " + id_a + " to '" + x + "'");
  }
  if (nats.size() != fa.size())
    throw YonedaFailure("|Nat(Hom(" + object + ",-), F)| = " + std::to_string(nats.size()) +
                        " but |F(" + object + ")| = " + std::to_string(fa.size()));
  // Inverse direction: x determines eta_B(m) = F(m)(x).
  for (const auto& x : fa) {
    NatTransformation eta;
    for (const auto& [b, homs] : hom.object_map) {
      auto& comp = eta.components[b];
      for (const auto& m : homs) comp[m] = f.morphism_map.at(m).at(x);
    }
    const auto it = std::find_if(nats.begin(), nats.end(), [&](const NatTransformation& n) {
      return n.components == eta.components;
    });
    if (it == nats.end() || !is_natural(cat, hom, f, eta))
      throw YonedaFailure("element '" + x + "' does not induce an enumerated transformation");
  }
  return w;
}

RepresentableIso representable_iso_check(const FinCategory& cat, const std::string& a,
                                         const std::string& b) {
  const auto ix = require_category(cat);
  if (!ix.obj_index.count(a)) throw PreconditionError("unknown object '" + a + "'");
  if (!ix.obj_index.count(b)) throw PreconditionError("unknown object '" + b + "'");
  const auto ha = hom_functor(cat, a);
  const auto hb = hom_functor(cat, b);

  RepresentableIso out;
  for (const auto& eta : enumerate_nat(cat, ha, hb)) {
    bool bijective = true;
    for (const auto& [obj, comp] : eta.components) {
      std::set<std::string> image;
      for (const auto& [_, y] : comp) image.insert(y);
      if (image.size() != comp.size() || image.size() != hb.object_map.at(obj).size()) {
        bijective = false;
        break;
      }
    }
    if (!bijective) continue;
    ++out.natural_isos;
    if (out.witness) continue;
    // eta_A(id_A) : B -> A, and the preimage of id_B under eta_B : A -> B.
    const auto& id_a = ix.morphisms[ix.identity[ix.obj_index.at(a)]];
    const auto& id_b = ix.morphisms[ix.identity[ix.obj_index.at(b)]];
    const auto backward = eta.components.at(a).at(id_a);
    std::string forward;
    for (const auto& [x, y] : eta.components.at(b))
      if (y == id_b) forward = x;
    const auto fi = ix.mor_index.at(forward);
    const auto gi = ix.mor_index.at(backward);
    if (ix.compose(gi, fi) != ix.mor_index.at(id_a) || ix.compose(fi, gi) != ix.mor_index.at(id_b))
      throw YonedaFailure("natural isomorphism Hom(" + a + ",-) ~ Hom(" + b +
                          ",-) does not yield inverse morphisms");
    out.witness = IsoWitness{forward, backward};
  }
  out.isomorphic = out.natural_isos > 0;
  return out;
}

}  // namespace wdsec::fincat
