#include "wdsec/random_networks.hpp"

#include "wdsec/oracle.hpp"

namespace wdsec::random {
namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

SourceExpr random_source(std::mt19937_64& rng, const std::vector<PortRef>& refs) {
  const auto kind = refs.empty() ? 1 : pick(rng, 0, 5);
  if (kind == 1) return Const{pick(rng, 0, 1)};
  if (kind == 2 && refs.size() >= 2) {
    Table t;
    const auto a = pick(rng, 0, refs.size() - 1);
    auto b = pick(rng, 0, refs.size() - 2);
    if (b >= a) ++b;
    t.refs = {refs[a], refs[b]};
    for (int i = 0; i < 4; ++i) t.values.push_back(pick(rng, 0, 1));
    return t;
  }
  return refs[pick(rng, 0, refs.size() - 1)];
}

}  // namespace

Box random_box(std::mt19937_64& rng, const std::string& name, const Options& opt) {
  std::vector<std::string> ins, outs;
  const auto ni = pick(rng, 1, opt.max_ports), no = pick(rng, 1, opt.max_ports);
  for (std::size_t i = 0; i < ni; ++i) ins.push_back("x" + std::to_string(i));
  for (std::size_t i = 0; i < no; ++i) outs.push_back("y" + std::to_string(i));
  return binary_box(name, ins, outs);
}

MooreMachine random_machine(std::mt19937_64& rng, const Box& box, const std::string& name,
                            const Options& opt) {
  const auto n = pick(rng, 1, opt.max_states);
  std::vector<std::string> states;
  for (std::size_t s = 0; s < n; ++s) states.push_back("s" + std::to_string(s));
  std::vector<std::size_t> update(n * box.in_count()), readout(n);
  for (auto& u : update) u = pick(rng, 0, n - 1);
  for (auto& r : readout) r = pick(rng, 0, box.out_count() - 1);
  return MooreMachine(name, box, std::move(states), pick(rng, 0, n - 1), std::move(update), std::move(readout));
}

Wiring random_wiring(std::mt19937_64& rng, const std::vector<Box>& inner, const std::vector<Box>& outer) {
  Wiring w{inner, outer, {}, {}};
  std::vector<PortRef> inner_refs, all_refs;
  for (std::size_t b = 0; b < inner.size(); ++b)
    for (std::size_t p = 0; p < inner[b].out.size(); ++p) inner_refs.push_back(inner_out(b, p));
  all_refs = inner_refs;
  for (std::size_t b = 0; b < outer.size(); ++b)
    for (std::size_t p = 0; p < outer[b].in.size(); ++p) all_refs.push_back(outer_in(b, p));
  for (const auto& b : inner) {
    w.in_map.emplace_back();
    for (std::size_t p = 0; p < b.in.size(); ++p) w.in_map.back().push_back(random_source(rng, all_refs));
  }
  for (const auto& b : outer) {
    w.out_map.emplace_back();
    for (std::size_t p = 0; p < b.out.size(); ++p) w.out_map.back().push_back(random_source(rng, inner_refs));
  }
  validate_wiring(w);
  return w;
}

Network random_network(std::mt19937_64& rng, const Options& opt) {
  Network n;
  std::vector<Box> inner;
  const auto count = pick(rng, 1, opt.max_boxes);
  for (std::size_t i = 0; i < count; ++i) {
    inner.push_back(random_box(rng, "X" + std::to_string(i), opt));
    n.machines.push_back(random_machine(rng, inner.back(), "M" + std::to_string(i), opt));
  }
  const auto mid = random_box(rng, "Y", opt);
  const auto top = random_box(rng, "Z", opt);
  n.f = random_wiring(rng, inner, {mid});
  n.g = random_wiring(rng, {mid}, {top});
  for (std::size_t t = 0; t < opt.word_length; ++t) n.word.push_back(decode(top.in, pick(rng, 0, top.in_count() - 1)));
  return n;
}

std::vector<Network> random_networks(std::uint64_t seed, std::size_t count, const Options& opt) {
  std::mt19937_64 rng(seed);
  std::vector<Network> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_network(rng, opt));
  return out;
}

LawReport check_laws(std::uint64_t seed, std::size_t count, std::size_t depth, const Options& opt) {
  LawReport r;
  const auto nets = random_networks(seed, count, opt);
  r.networks = nets.size();
  for (std::size_t i = 0; i < nets.size(); ++i) {
    const auto& n = nets[i];
    const auto tag = "network " + std::to_string(i) + ": ";

    for (const auto& m : n.machines) {
      const auto lifted = apply_algebra(identity_wiring(m.box()), {m});
      const MachineHom bij{"id", lifted, m, [&] {
                             std::vector<std::size_t> v(m.state_count());
                             for (std::size_t s = 0; s < v.size(); ++s) v[s] = s;
                             return v;
                           }()};
      if (!is_isomorphism(bij) || !oracle::trace_equivalent(lifted, m, depth)) {
        ++r.identity_failures;
        r.messages.push_back(tag + "F(id) differs from " + m.name());
      }
    }
    std::vector<Box> inner;
    for (const auto& m : n.machines) inner.push_back(m.box());
    const auto fm = apply_algebra(n.f, n.machines);
    if (!oracle::trace_equivalent(apply_algebra(compose(n.f, identity_wiring(inner)), n.machines), fm, depth) ||
        !oracle::trace_equivalent(apply_algebra(compose(identity_wiring(n.f.outer), n.f), n.machines), fm, depth)) {
      ++r.identity_failures;
      r.messages.push_back(tag + "F(f o id) or F(id o f) differs from F(f)");
    }

    const auto gf = compose(n.g, n.f);
    const auto whole = apply_algebra(gf, n.machines);
    const auto staged = apply_algebra(n.g, {fm});
    if (!oracle::trace_equivalent(whole, staged, depth)) {
      ++r.composition_failures;
      r.messages.push_back(tag + "F(g o f) differs from F(g) o F(f)");
    }
    if (oracle::stagewise_simulate(gf, n.machines, n.word) != run(whole, n.word)) {
      ++r.oracle_failures;
      r.messages.push_back(tag + "stagewise simulation differs from the composite");
    }
  }
  return r;
}

}  // namespace wdsec::random
