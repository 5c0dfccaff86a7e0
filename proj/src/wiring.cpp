#include "wdsec/wiring.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace wdsec {
namespace {

const Port& target_in_port(const Wiring& w, std::size_t box, std::size_t port) {
  return w.inner[box].in[port];
}

std::string ref_name(const Wiring& w, const PortRef& r) {
  if (r.side == Side::outer_in) return "outer[" + std::to_string(r.box) + "]." + w.outer[r.box].in[r.port].name;
  return "inner[" + std::to_string(r.box) + "]." + w.inner[r.box].out[r.port].name;
}

void check_ref(const Wiring& w, const PortRef& r, bool allow_outer, const std::string& where) {
  if (r.side == Side::outer_in) {
    if (!allow_outer) throw WiringError(where + ": an outer output cannot read an outer input");
    if (r.box >= w.outer.size() || r.port >= w.outer[r.box].in.size())
      throw WiringError(where + ": reference to a nonexistent outer input");
  } else if (r.box >= w.inner.size() || r.port >= w.inner[r.box].out.size()) {
    throw WiringError(where + ": reference to a nonexistent inner output");
  }
}

std::size_t table_size(const Wiring& w, const std::vector<PortRef>& refs) {
  std::size_t n = 1;
  for (const auto& r : refs) n *= ref_alphabet(w, r).size();
  return n;
}

void check_expr(const Wiring& w, const SourceExpr& e, const Port& target, bool allow_outer,
                const std::string& where) {
  if (const auto* r = std::get_if<PortRef>(&e)) {
    check_ref(w, *r, allow_outer, where);
    if (ref_alphabet(w, *r) != target.alphabet)
      throw WiringError(where + ": alphabet of " + ref_name(w, *r) + " differs from port '" +
                        target.name + "'");
  } else if (const auto* c = std::get_if<Const>(&e)) {
    if (c->symbol >= target.alphabet.size())
      throw WiringError(where + ": constant outside the alphabet of port '" + target.name + "'");
  } else {
    const auto& t = std::get<Table>(e);
    for (const auto& r : t.refs) check_ref(w, r, allow_outer, where);
    if (t.values.size() != table_size(w, t.refs))
      throw WiringError(where + ": table is not total over its sources");
    for (auto v : t.values)
      if (v >= target.alphabet.size())
        throw WiringError(where + ": table value outside the alphabet of port '" + target.name + "'");
  }
}

template <class Lookup>
std::size_t eval_with(const Wiring& w, const SourceExpr& e, Lookup&& lookup) {
  if (const auto* r = std::get_if<PortRef>(&e)) return lookup(*r);
  if (const auto* c = std::get_if<Const>(&e)) return c->symbol;
  const auto& t = std::get<Table>(e);
  std::size_t code = 0;
  for (const auto& r : t.refs) code = code * ref_alphabet(w, r).size() + lookup(r);
  return t.values[code];
}

// Substitutes the references of `e`, which lives in `origin`; substitutes
// live in `space`. A substitute carries the alphabet of the reference it
// replaces, so table keys keep their radices.
SourceExpr substitute(const Wiring& origin, const Wiring& space, const SourceExpr& e,
                      const std::function<SourceExpr(const PortRef&)>& sub) {
  if (const auto* r = std::get_if<PortRef>(&e)) return sub(*r);
  if (std::holds_alternative<Const>(e)) return e;
  const auto& t = std::get<Table>(e);
  std::vector<SourceExpr> parts;
  parts.reserve(t.refs.size());
  bool plain = true;
  for (const auto& r : t.refs) {
    parts.push_back(sub(r));
    plain = plain && std::holds_alternative<PortRef>(parts.back());
  }
  if (plain) {
    Table out{{}, t.values};
    for (const auto& p : parts) out.refs.push_back(std::get<PortRef>(p));
    return out;
  }
  // Flatten into one table over the distinct references the parts read.
  std::vector<PortRef> leaves;
  auto note = [&](const PortRef& r) {
    if (std::find(leaves.begin(), leaves.end(), r) == leaves.end()) leaves.push_back(r);
  };
  for (const auto& p : parts) {
    if (const auto* r = std::get_if<PortRef>(&p)) note(*r);
    else if (const auto* pt = std::get_if<Table>(&p))
      for (const auto& r : pt->refs) note(r);
  }
  std::vector<std::size_t> slot_radix;
  for (const auto& r : t.refs) slot_radix.push_back(ref_alphabet(origin, r).size());

  const auto count = table_size(space, leaves);
  std::vector<std::size_t> values(count);
  std::vector<std::size_t> assign(leaves.size());
  for (std::size_t code = 0; code < count; ++code) {
    auto rest = code;
    for (std::size_t i = leaves.size(); i-- > 0;) {
      const auto radix = ref_alphabet(space, leaves[i]).size();
      assign[i] = rest % radix;
      rest /= radix;
    }
    auto lookup = [&](const PortRef& r) {
      return assign[static_cast<std::size_t>(std::find(leaves.begin(), leaves.end(), r) - leaves.begin())];
    };
    std::size_t key = 0;
    for (std::size_t i = 0; i < parts.size(); ++i)
      key = key * slot_radix[i] + eval_with(space, parts[i], lookup);
    values[code] = t.values[key];
  }
  if (leaves.empty()) return Const{values.front()};
  return Table{std::move(leaves), std::move(values)};
}

void check_boundary(const std::vector<Box>& have, const std::vector<Box>& want,
                    const std::string& what) {
  if (have.size() != want.size())
    throw CompositionError(what + ": " + std::to_string(have.size()) + " boxes vs " +
                           std::to_string(want.size()));
  for (std::size_t b = 0; b < have.size(); ++b) {
    auto side = [&](const Ports& x, const Ports& y, const char* dir) {
      for (std::size_t p = 0; p < std::max(x.size(), y.size()); ++p) {
        if (p >= x.size() || p >= y.size())
          throw CompositionError(what + ": box " + std::to_string(b) + " (" + want[b].name + ") " +
                                 dir + " port count " + std::to_string(x.size()) + " vs " +
                                 std::to_string(y.size()));
        if (x[p].name != y[p].name)
          throw CompositionError(what + ": box " + std::to_string(b) + " (" + want[b].name + ") " +
                                 dir + " port " + std::to_string(p) + " is '" + x[p].name +
                                 "' vs '" + y[p].name + "'");
        if (x[p].alphabet != y[p].alphabet)
          throw CompositionError(what + ": box " + std::to_string(b) + " (" + want[b].name + ") " +
                                 dir + " port '" + x[p].name + "' has a different alphabet");
      }
    };
    side(have[b].in, want[b].in, "input");
    side(have[b].out, want[b].out, "output");
  }
}

void append_text(std::ostringstream& os, const SourceExpr& e) {
  if (const auto* r = std::get_if<PortRef>(&e)) {
    os << (r->side == Side::outer_in ? 'O' : 'I') << r->box << '.' << r->port;
  } else if (const auto* c = std::get_if<Const>(&e)) {
    os << 'K' << c->symbol;
  } else {
    const auto& t = std::get<Table>(e);
    os << "T[";
    for (const auto& r : t.refs) append_text(os, SourceExpr{r});
    os << ':';
    for (auto v : t.values) os << v << ' ';
    os << ']';
  }
}

void append_box(std::ostringstream& os, const Box& b) {
  os << b.name << '{';
  for (const auto& p : b.in) {
    os << p.name << ':';
    for (const auto& s : p.alphabet) os << s << ',';
  }
  os << '/';
  for (const auto& p : b.out) {
    os << p.name << ':';
    for (const auto& s : p.alphabet) os << s << ',';
  }
  os << '}';
}

}  // namespace

const Alphabet& ref_alphabet(const Wiring& w, const PortRef& r) {
  if (r.side == Side::outer_in) return w.outer.at(r.box).in.at(r.port).alphabet;
  return w.inner.at(r.box).out.at(r.port).alphabet;
}

void validate_wiring(const Wiring& w) {
  for (const auto& b : w.inner) validate_box(b);
  for (const auto& b : w.outer) validate_box(b);
  if (w.in_map.size() != w.inner.size())
    throw WiringError("in_map covers " + std::to_string(w.in_map.size()) + " of " +
                      std::to_string(w.inner.size()) + " inner boxes");
  if (w.out_map.size() != w.outer.size())
    throw WiringError("out_map covers " + std::to_string(w.out_map.size()) + " of " +
                      std::to_string(w.outer.size()) + " outer boxes");
  for (std::size_t b = 0; b < w.inner.size(); ++b) {
    if (w.in_map[b].size() != w.inner[b].in.size())
      throw WiringError("in_map of inner box " + std::to_string(b) + " (" + w.inner[b].name +
                        ") is not total");
    for (std::size_t p = 0; p < w.in_map[b].size(); ++p)
      check_expr(w, w.in_map[b][p], target_in_port(w, b, p), true,
                 "in_map " + w.inner[b].name + "." + w.inner[b].in[p].name);
  }
  for (std::size_t b = 0; b < w.outer.size(); ++b) {
    if (w.out_map[b].size() != w.outer[b].out.size())
      throw WiringError("out_map of outer box " + std::to_string(b) + " (" + w.outer[b].name +
                        ") is not total");
    for (std::size_t p = 0; p < w.out_map[b].size(); ++p)
      check_expr(w, w.out_map[b][p], w.outer[b].out[p], false,
                 "out_map " + w.outer[b].name + "." + w.outer[b].out[p].name);
  }
}

Wiring identity_wiring(const Box& x) { return identity_wiring(std::vector<Box>{x}); }

Wiring identity_wiring(const std::vector<Box>& xs) {
  Wiring w{xs, xs, {}, {}};
  for (std::size_t b = 0; b < xs.size(); ++b) {
    auto& ins = w.in_map.emplace_back();
    for (std::size_t p = 0; p < xs[b].in.size(); ++p) ins.emplace_back(outer_in(b, p));
    auto& outs = w.out_map.emplace_back();
    for (std::size_t p = 0; p < xs[b].out.size(); ++p) outs.emplace_back(inner_out(b, p));
  }
  return w;
}

Wiring compose(const Wiring& g, const Wiring& f) {
  check_boundary(f.outer, g.inner, "compose");
  Wiring r{f.inner, g.outer, {}, {}};

  // A g-expression read in the result: B outputs become f's output expressions.
  auto from_g = [&](const SourceExpr& e) {
    return substitute(g, r, e, [&](const PortRef& ref) -> SourceExpr {
      if (ref.side == Side::inner_out) return f.out_map[ref.box][ref.port];
      return ref;
    });
  };
  for (std::size_t a = 0; a < f.inner.size(); ++a) {
    auto& ins = r.in_map.emplace_back();
    for (const auto& e : f.in_map[a]) {
      ins.push_back(substitute(f, r, e, [&](const PortRef& ref) -> SourceExpr {
        if (ref.side == Side::inner_out) return ref;
        return from_g(g.in_map[ref.box][ref.port]);
      }));
    }
  }
  for (std::size_t c = 0; c < g.outer.size(); ++c) {
    auto& outs = r.out_map.emplace_back();
    for (const auto& e : g.out_map[c]) outs.push_back(from_g(e));
  }
  return r;
}

Wiring compose_chain(const std::vector<Wiring>& chain) {
  if (chain.empty()) throw PreconditionError("compose_chain of an empty list");
  Wiring acc = chain.back();
  for (std::size_t i = chain.size() - 1; i-- > 0;) acc = compose(chain[i], acc);
  return acc;
}

Wiring tensor(const std::vector<Wiring>& ws) {
  if (ws.empty()) throw PreconditionError("tensor of an empty list");
  Wiring r;
  std::size_t inner_off = 0;
  std::size_t outer_off = 0;
  auto shift = [&](PortRef ref) {
    ref.box += ref.side == Side::inner_out ? inner_off : outer_off;
    return ref;
  };
  auto shift_expr = [&](SourceExpr e) {
    if (auto* ref = std::get_if<PortRef>(&e)) *ref = shift(*ref);
    else if (auto* t = std::get_if<Table>(&e))
      for (auto& ref : t->refs) ref = shift(ref);
    return e;
  };
  for (const auto& w : ws) {
    r.inner.insert(r.inner.end(), w.inner.begin(), w.inner.end());
    r.outer.insert(r.outer.end(), w.outer.begin(), w.outer.end());
    for (const auto& ins : w.in_map) {
      auto& dst = r.in_map.emplace_back();
      for (const auto& e : ins) dst.push_back(shift_expr(e));
    }
    for (const auto& outs : w.out_map) {
      auto& dst = r.out_map.emplace_back();
      for (const auto& e : outs) dst.push_back(shift_expr(e));
    }
    inner_off += w.inner.size();
    outer_off += w.outer.size();
  }
  return r;
}

std::size_t eval_expr(const Wiring& w, const SourceExpr& e, const BoxValues& inner_out,
                      const BoxValues& outer_in) {
  return eval_with(w, e, [&](const PortRef& r) {
    return r.side == Side::outer_in ? outer_in[r.box][r.port] : inner_out[r.box][r.port];
  });
}

namespace {
void check_values(const std::vector<Box>& boxes, const BoxValues& v, bool inputs, const char* what) {
  if (v.size() != boxes.size())
    throw AlphabetError(std::string(what) + ": expected " + std::to_string(boxes.size()) +
                        " tuples, got " + std::to_string(v.size()));
  for (std::size_t b = 0; b < boxes.size(); ++b) check_tuple(inputs ? boxes[b].in : boxes[b].out, v[b]);
}
}  // namespace

EvalResult eval(const Wiring& w, const BoxValues& inner_out, const BoxValues& outer_in) {
  check_values(w.inner, inner_out, false, "inner outputs");
  check_values(w.outer, outer_in, true, "outer inputs");
  EvalResult r;
  for (const auto& ins : w.in_map) {
    auto& t = r.inner_in.emplace_back();
    for (const auto& e : ins) t.push_back(eval_expr(w, e, inner_out, outer_in));
  }
  for (const auto& outs : w.out_map) {
    auto& t = r.outer_out.emplace_back();
    for (const auto& e : outs) t.push_back(eval_expr(w, e, inner_out, outer_in));
  }
  return r;
}

BoxValues eval_out(const Wiring& w, const BoxValues& inner_out) {
  check_values(w.inner, inner_out, false, "inner outputs");
  const BoxValues none;
  BoxValues out;
  for (const auto& outs : w.out_map) {
    auto& t = out.emplace_back();
    for (const auto& e : outs) t.push_back(eval_expr(w, e, inner_out, none));
  }
  return out;
}

Wiring normalize(const Wiring& w) {
  auto simplify = [&](const SourceExpr& e, const Alphabet& target) -> SourceExpr {
    const auto* t = std::get_if<Table>(&e);
    if (!t) return e;
    std::vector<PortRef> leaves;
    for (const auto& r : t->refs)
      if (std::find(leaves.begin(), leaves.end(), r) == leaves.end()) leaves.push_back(r);
    std::vector<std::size_t> radix;
    for (const auto& r : leaves) radix.push_back(ref_alphabet(w, r).size());

    auto value_at = [&](const std::vector<std::size_t>& assign) {
      std::size_t key = 0;
      for (const auto& r : t->refs) {
        const auto i = static_cast<std::size_t>(std::find(leaves.begin(), leaves.end(), r) - leaves.begin());
        key = key * radix[i] + assign[i];
      }
      return t->values[key];
    };
    auto for_each_assign = [&](const std::vector<std::size_t>& slots, auto&& fn) {
      std::vector<std::size_t> assign(leaves.size(), 0);
      std::size_t count = 1;
      for (auto s : slots) count *= radix[s];
      for (std::size_t code = 0; code < count; ++code) {
        auto rest = code;
        for (std::size_t k = slots.size(); k-- > 0;) {
          assign[slots[k]] = rest % radix[slots[k]];
          rest /= radix[slots[k]];
        }
        fn(assign);
      }
    };

    std::vector<std::size_t> all(leaves.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      bool matters = false;
      for_each_assign(all, [&](std::vector<std::size_t> assign) {
        if (matters || assign[i] != 0) return;
        const auto base = value_at(assign);
        for (std::size_t v = 1; v < radix[i] && !matters; ++v) {
          assign[i] = v;
          matters = value_at(assign) != base;
        }
      });
      if (matters) kept.push_back(i);
    }

    Table out;
    for (auto i : kept) out.refs.push_back(leaves[i]);
    for_each_assign(kept, [&](const std::vector<std::size_t>& assign) { out.values.push_back(value_at(assign)); });
    if (out.refs.empty()) return Const{out.values.front()};
    if (out.refs.size() == 1 && ref_alphabet(w, out.refs[0]) == target) {
      bool identity = true;
      for (std::size_t k = 0; k < out.values.size(); ++k) identity = identity && out.values[k] == k;
      if (identity) return out.refs[0];
    }
    return out;
  };

  Wiring r = w;
  for (std::size_t b = 0; b < r.inner.size(); ++b)
    for (std::size_t p = 0; p < r.in_map[b].size(); ++p)
      r.in_map[b][p] = simplify(w.in_map[b][p], w.inner[b].in[p].alphabet);
  for (std::size_t b = 0; b < r.outer.size(); ++b)
    for (std::size_t p = 0; p < r.out_map[b].size(); ++p)
      r.out_map[b][p] = simplify(w.out_map[b][p], w.outer[b].out[p].alphabet);
  return r;
}

std::size_t eval_domain_size(const Wiring& w) {
  std::size_t n = 1;
  for (const auto& b : w.inner) n *= b.out_count();
  for (const auto& b : w.outer) n *= b.in_count();
  return n;
}

void eval_domain_at(const Wiring& w, std::size_t index, BoxValues& inner_out, BoxValues& outer_in) {
  inner_out.assign(w.inner.size(), {});
  outer_in.assign(w.outer.size(), {});
  for (std::size_t b = w.outer.size(); b-- > 0;) {
    const auto n = w.outer[b].in_count();
    outer_in[b] = decode(w.outer[b].in, index % n);
    index /= n;
  }
  for (std::size_t b = w.inner.size(); b-- > 0;) {
    const auto n = w.inner[b].out_count();
    inner_out[b] = decode(w.inner[b].out, index % n);
    index /= n;
  }
}

bool same_boundary(const Wiring& a, const Wiring& b) {
  auto same = [](const std::vector<Box>& x, const std::vector<Box>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!same_interface(x[i], y[i])) return false;
    return true;
  };
  return same(a.inner, b.inner) && same(a.outer, b.outer);
}

namespace {

// A wiring resolved against the flat digit layout of its eval domain:
// inner outputs then outer inputs, first port most significant.
struct FlatWiring {
  struct Expr {
    std::size_t constant = 0;
    std::vector<std::size_t> digits;  // referenced digit positions
    std::vector<std::size_t> radix;
    const std::vector<std::size_t>* values = nullptr;  // null: a plain reference or constant
    bool is_const = false;
  };
  std::vector<std::size_t> radix;  // per digit
  std::vector<Expr> exprs;         // in_map then out_map, flattened

  explicit FlatWiring(const Wiring& w) {
    std::vector<std::vector<std::size_t>> inner_at(w.inner.size()), outer_at(w.outer.size());
    for (std::size_t b = 0; b < w.inner.size(); ++b)
      for (const auto& p : w.inner[b].out) {
        inner_at[b].push_back(radix.size());
        radix.push_back(p.alphabet.size());
      }
    for (std::size_t b = 0; b < w.outer.size(); ++b)
      for (const auto& p : w.outer[b].in) {
        outer_at[b].push_back(radix.size());
        radix.push_back(p.alphabet.size());
      }
    auto digit = [&](const PortRef& r) {
      return r.side == Side::inner_out ? inner_at[r.box][r.port] : outer_at[r.box][r.port];
    };
    auto add = [&](const SourceExpr& e) {
      Expr x;
      if (const auto* r = std::get_if<PortRef>(&e)) {
        x.digits = {digit(*r)};
      } else if (const auto* k = std::get_if<Const>(&e)) {
        x.is_const = true;
        x.constant = k->symbol;
      } else {
        const auto& t = std::get<Table>(e);
        for (const auto& r : t.refs) {
          x.digits.push_back(digit(r));
          x.radix.push_back(radix[x.digits.back()]);
        }
        x.values = &t.values;
      }
      exprs.push_back(std::move(x));
    };
    for (const auto& ins : w.in_map)
      for (const auto& e : ins) add(e);
    for (const auto& outs : w.out_map)
      for (const auto& e : outs) add(e);
  }

  void digits_of(std::size_t index, std::vector<std::size_t>& d) const {
    d.resize(radix.size());
    for (std::size_t i = radix.size(); i-- > 0;) {
      d[i] = index % radix[i];
      index /= radix[i];
    }
  }

  std::size_t value(const Expr& x, const std::vector<std::size_t>& d) const {
    if (x.is_const) return x.constant;
    if (!x.values) return d[x.digits[0]];
    std::size_t code = 0;
    for (std::size_t i = 0; i < x.digits.size(); ++i) code = code * x.radix[i] + d[x.digits[i]];
    return (*x.values)[code];
  }
};

bool same_at(const FlatWiring& a, const FlatWiring& b, std::size_t index, std::vector<std::size_t>& d) {
  a.digits_of(index, d);
  for (std::size_t e = 0; e < a.exprs.size(); ++e)
    if (a.value(a.exprs[e], d) != b.value(b.exprs[e], d)) return false;
  return true;
}

}  // namespace

std::optional<EvalWitness> eval_difference(const Wiring& a, const Wiring& b, kernels::Exec exec) {
  if (!same_boundary(a, b)) throw CompositionError("eval comparison of wirings with different boundaries");
  const auto n = eval_domain_size(a);
  const FlatWiring fa(a), fb(b);
  auto witness = [&](std::size_t i) {
    EvalWitness w;
    eval_domain_at(a, i, w.inner_out, w.outer_in);
    return w;
  };
  if (exec == kernels::Exec::serial) {
    std::vector<std::size_t> d;
    for (std::size_t i = 0; i < n; ++i)
      if (!same_at(fa, fb, i, d)) return witness(i);
    return std::nullopt;
  }
  // Chunked so a difference near the front stops the scan early.
  constexpr std::size_t kChunk = 1 << 14;
  for (std::size_t start = 0; start < n; start += kChunk) {
    const auto end = std::min(n, start + kChunk);
    std::size_t first = n;
#pragma omp parallel
    {
      std::vector<std::size_t> d;
#pragma omp for schedule(static) reduction(min : first)
      for (std::size_t i = start; i < end; ++i)
        if (!same_at(fa, fb, i, d)) first = std::min(first, i);
    }
    if (first < n) return witness(first);
  }
  return std::nullopt;
}

ArchCheck check_arch_morphism(const Wiring& phi, const Wiring& psi, const Wiring& k) {
  check_boundary(k.inner, phi.inner, "architecture morphism (k vs phi inner)");
  check_boundary(k.outer, psi.inner, "architecture morphism (k vs psi inner)");
  check_boundary(psi.outer, phi.outer, "architecture morphism (outer boxes)");
  const auto composite = compose(psi, k);
  // Box labels may differ; compare on interfaces.
  auto diff = eval_difference(relabel(composite, phi.inner, phi.outer), phi);
  return ArchCheck{!diff.has_value(), std::move(diff)};
}

Wiring place_endo(const std::vector<Box>& boxes, std::size_t index, const Wiring& endo) {
  if (index >= boxes.size()) throw PreconditionError("endomorphism index out of range");
  if (endo.inner.size() != 1 || endo.outer.size() != 1 ||
      !same_interface(endo.inner[0], boxes[index]) || !same_interface(endo.outer[0], boxes[index]))
    throw CompositionError("wiring is not an endomorphism of box '" + boxes[index].name + "'");
  std::vector<Wiring> parts;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    if (i == index) parts.push_back(relabel(endo, {boxes[i]}, {boxes[i]}));
    else parts.push_back(identity_wiring(boxes[i]));
  }
  return tensor(parts);
}

Wiring relabel(const Wiring& w, const std::vector<Box>& inner, const std::vector<Box>& outer) {
  check_boundary(w.inner, inner, "relabel inner");
  check_boundary(w.outer, outer, "relabel outer");
  Wiring r = w;
  r.inner = inner;
  r.outer = outer;
  return r;
}

std::uint64_t fingerprint(const Wiring& w) {
  std::ostringstream os;
  for (const auto& b : w.inner) append_box(os, b);
  os << "=>";
  for (const auto& b : w.outer) append_box(os, b);
  for (const auto& ins : w.in_map) {
    os << '|';
    for (const auto& e : ins) append_text(os, e);
  }
  for (const auto& outs : w.out_map) {
    os << '#';
    for (const auto& e : outs) append_text(os, e);
  }
  return fnv1a(os.str());
}

}  // namespace wdsec
