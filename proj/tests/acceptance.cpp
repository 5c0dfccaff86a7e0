// Acceptance run: one PASS/FAIL line per criterion, exit 0 iff all pass.

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include "wdsec/io.hpp"
#include "wdsec/random_networks.hpp"

namespace fs = std::filesystem;
using namespace wdsec;

namespace {

// Pinned thresholds.
constexpr std::uint64_t kSeed = 0;
constexpr std::size_t kLawNetworks = 100;
constexpr std::size_t kDepth = 6;
constexpr std::size_t kMaxWitnessLength = 6;
constexpr std::size_t kMinCategories = 5;
constexpr std::size_t kMinFunctors = 3;
constexpr std::size_t kMaxObjects = 4;
constexpr std::size_t kMaxMorphisms = 20;
constexpr double kYonedaSeconds = 10.0;
constexpr std::size_t kMinKb = 3;
constexpr std::size_t kRealComponents = 6;
constexpr std::size_t kViewComponents = 5;
constexpr std::size_t kOracleInstances = 500;
constexpr double kTotalSeconds = 60.0;

const fs::path kFixtures = WDSEC_FIXTURE_DIR;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

// --- 1 ----------------------------------------------------------------------

Outcome functor_laws() {
  const auto r = random::check_laws(kSeed, kLawNetworks, kDepth);
  std::ostringstream os;
  os << r.networks << " networks (seed " << kSeed << ", depth " << kDepth << "): identity failures "
     << r.identity_failures << ", composition failures " << r.composition_failures
     << ", oracle failures " << r.oracle_failures;
  if (!r.messages.empty()) os << "; first: " << r.messages.front();
  return {r.networks >= kLawNetworks && r.ok(), os.str()};
}

// --- 2 ----------------------------------------------------------------------

bool same_list(const std::vector<Box>& a, const std::vector<Box>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same_interface(a[i], b[i])) return false;
  return true;
}

/// Every wiring shipped in the UAV fixture, the systems' wirings, the
/// sensor wirings in parallel with identities, and every endo placement.
std::vector<Wiring> wiring_pool(const io::SystemDoc& doc) {
  std::vector<Wiring> pool;
  for (const auto& w : doc.wirings) pool.push_back(w.wiring);
  for (const auto& s : doc.systems) pool.push_back(s.wiring);
  std::vector<Wiring> endos;
  for (const auto& w : doc.wirings)
    if (w.wiring.inner.size() == 1 && w.wiring.outer.size() == 1 && same_list(w.wiring.inner, w.wiring.outer))
      endos.push_back(w.wiring);
  for (const auto& s : doc.systems)
    for (std::size_t i = 0; i < s.wiring.inner.size(); ++i)
      for (const auto& e : endos)
        if (same_interface(e.inner[0], s.wiring.inner[i])) pool.push_back(place_endo(s.wiring.inner, i, e));
  const auto top = doc.wiring("uav-top");
  const auto top_view = doc.wiring("uav-top-view");
  pool.push_back(tensor({doc.wiring("uav-sensors"), identity_wiring(top.inner[1]), identity_wiring(top.inner[2])}));
  pool.push_back(
      tensor({doc.wiring("uav-sensors-view"), identity_wiring(top_view.inner[1]), identity_wiring(top_view.inner[2])}));
  pool.push_back(tensor({doc.wiring("imu-refinement"), identity_wiring(top.inner[1]), identity_wiring(top.inner[2])}));
  return pool;
}

Outcome category_laws() {
  const auto doc = io::load_system(kFixtures / "uav" / "system.json");
  const auto pool = wiring_pool(doc);
  std::size_t triples = 0, pairs = 0, failures = 0;
  std::string first;
  auto fail = [&](const std::string& what) {
    if (failures++ == 0) first = what;
  };
  for (std::size_t fi = 0; fi < pool.size(); ++fi) {
    const auto& f = pool[fi];
    if (!eval_equal(compose(identity_wiring(f.outer), f), f)) fail("left identity, wiring " + std::to_string(fi));
    if (!eval_equal(compose(f, identity_wiring(f.inner)), f)) fail("right identity, wiring " + std::to_string(fi));
    for (std::size_t gi = 0; gi < pool.size(); ++gi) {
      const auto& g = pool[gi];
      if (!same_list(f.outer, g.inner)) continue;
      ++pairs;
      const auto gf = compose(g, f);
      for (std::size_t hi = 0; hi < pool.size(); ++hi) {
        const auto& h = pool[hi];
        if (!same_list(g.outer, h.inner)) continue;
        ++triples;
        if (!eval_equal(compose(h, gf), compose(compose(h, g), f)))
          fail("associativity (" + std::to_string(hi) + ", " + std::to_string(gi) + ", " + std::to_string(fi) + ")");
      }
    }
  }
  std::ostringstream os;
  os << pool.size() << " wirings, " << pairs << " composable pairs, " << triples << " composable triples, "
     << failures << " failures" << (first.empty() ? "" : "; first: " + first);
  return {triples > 0 && failures == 0, os.str()};
}

// --- 3 ----------------------------------------------------------------------

Outcome yoneda() {
  const auto t0 = Clock::now();
  std::size_t cats = 0, functors = 0, checks = 0, failures = 0;
  std::string first;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(kFixtures / "fincat")) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  bool sizes_ok = true, enough_functors = true;
  for (const auto& p : files) {
    const auto doc = io::load_fincat(p);
    const auto& c = doc.category;
    if (!fincat::validate_category(c).ok()) {
      ++failures;
      first = c.name + ": invalid category";
      continue;
    }
    ++cats;
    sizes_ok = sizes_ok && c.objects.size() <= kMaxObjects && c.morphisms.size() <= kMaxMorphisms;
    enough_functors = enough_functors && doc.functors.size() >= kMinFunctors;
    for (const auto& f : doc.functors) {
      ++functors;
      for (const auto& a : c.objects) {
        ++checks;
        try {
          const auto w = fincat::yoneda_check(c, a, f);
          if (w.nat_count != w.element_count) throw fincat::YonedaFailure("count mismatch");
        } catch (const Error& e) {
          if (failures++ == 0) first = c.name + "/" + f.name + "/" + a + ": " + e.what();
        }
      }
    }
  }
  const auto secs = seconds_since(t0);
  std::ostringstream os;
  os << cats << " categories, " << functors << " functors, " << checks << " (object, functor) checks, " << failures
     << " failures, " << secs << " s" << (first.empty() ? "" : "; first: " + first);
  return {cats >= kMinCategories && enough_functors && sizes_ok && failures == 0 && secs < kYonedaSeconds,
          os.str()};
}

// --- 4 ----------------------------------------------------------------------

Outcome learning() {
  const auto doc = io::load_scenario(kFixtures / "uav" / "scenario.json");
  const auto& sc = doc.scenario;
  std::ostringstream os;

  probes::MachineOracle same(composite(sc.real));
  const auto a = probes::yoneda_filter(sc.kb, sc.battery, same);
  const bool a_ok = a.classification == probes::Classification::exact && a.complete();
  os << "(a) " << probes::to_string(a.classification) << " [" << (a.candidates.empty() ? "" : a.candidates[0]) << "]";

  const auto script = attacks::transport(sc.script("combined"), sc.attacker_view, sc.correspondence);
  const auto hacked = composite(attacks::apply_script(sc.real, script).system);
  bool absent = true;
  for (const auto& e : sc.kb.entries)
    if (oracle::trace_equivalent(e.machine, hacked.with_box(e.machine.box()), kDepth)) absent = false;
  bool distinct = true;
  for (std::size_t i = 0; i < sc.kb.entries.size(); ++i)
    for (std::size_t j = i + 1; j < sc.kb.entries.size(); ++j) {
      const auto& x = sc.kb.entries[i].machine;
      const auto& y = sc.kb.entries[j].machine;
      if (oracle::trace_equivalent(x, y, kDepth) && x.state_count() == y.state_count()) distinct = false;
    }
  probes::MachineOracle other(hacked);
  const auto b = probes::yoneda_filter(sc.kb, sc.battery, other);
  const bool b_ok = absent && distinct && b.classification == probes::Classification::unknown;
  os << "; (b) " << probes::to_string(b.classification) << (absent ? "" : " but target is in the KB");

  probes::MachineOracle any(composite(sc.attacker_view));
  const auto c = probes::yoneda_filter(sc.kb, {probes::terminal()}, any);
  const bool c_ok = c.classification == probes::Classification::ambiguous &&
                    c.candidates.size() == sc.kb.entries.size() && sc.kb.entries.size() >= kMinKb;
  os << "; (c) " << probes::to_string(c.classification) << " with " << c.candidates.size() << "/"
     << sc.kb.entries.size() << " entries";
  return {a_ok && b_ok && c_ok, os.str()};
}

// --- 5 ----------------------------------------------------------------------

Outcome equivalence_despite_error() {
  const auto doc = io::load_scenario(kFixtures / "uav" / "scenario.json");
  const auto& real = doc.scenario.real;
  const auto& view = doc.scenario.attacker_view;
  const auto r = composite(real);
  const auto v = composite(view);
  const bool eq = oracle::trace_equivalent(r, v, kDepth);
  std::ostringstream os;
  os << "trace_equivalent(depth " << kDepth << ") = " << (eq ? "true" : "false") << ", components "
     << real.components.size() << " vs " << view.components.size() << ", states " << r.state_count() << " vs "
     << v.state_count();
  return {eq && real.components.size() == kRealComponents && view.components.size() == kViewComponents &&
              !(real.wiring == view.wiring),
          os.str()};
}

// --- 6 ----------------------------------------------------------------------

Outcome attack_transport() {
  const auto doc = io::load_scenario(kFixtures / "uav" / "scenario.json");
  const auto& sc = doc.scenario;
  const auto& combined = sc.script("combined");

  const auto view_attacked = attacks::apply_script(sc.attacker_view, combined).system;
  const auto w = oracle::find_distinguishing_word(composite(sc.attacker_view), composite(view_attacked), kDepth);
  const bool i_ok = w && w->size() <= kMaxWitnessLength;

  const auto real_attacked =
      attacks::apply_script(sc.real, attacks::transport(combined, sc.attacker_view, sc.correspondence)).system;
  const auto va = composite(view_attacked);
  const bool ii_ok = oracle::trace_equivalent(va, composite(real_attacked).with_box(va.box()), kDepth);

  const auto twice = attacks::apply_script(sc.attacker_view, sc.script("double-swap")).system;
  const bool iii_ok = oracle::trace_equivalent(composite(sc.attacker_view), composite(twice), kDepth);

  std::ostringstream os;
  os << "(i) witness " << (w ? render_word(sc.attacker_view.outer().in, *w) : std::string("none")) << " length "
     << (w ? w->size() : 0) << "; (ii) transported composites equivalent: " << (ii_ok ? "yes" : "no")
     << "; (iii) double swap equivalent to baseline: " << (iii_ok ? "yes" : "no");
  return {i_ok && ii_ok && iii_ok, os.str()};
}

// --- 7 ----------------------------------------------------------------------

Outcome rewrite_equality() {
  std::size_t cases = 0, failures = 0;
  std::string first;
  for (const auto& c : scenarios::hom_cases()) {
    ++cases;
    try {
      const auto r = attacks::apply_rewrite(c.system, c.step);
      if (!r.witness) throw InvariantError("no lifted morphism");
      const auto& h = *r.witness;
      if (const auto v = check_hom(h)) throw InvariantError(v->kind + ": " + v->message);
      if (!same_tables(h.source, composite(c.system))) throw InvariantError("source is not the old composite");
      if (!same_tables(h.target, composite(r.system))) throw InvariantError("target is not the new composite");
    } catch (const Error& e) {
      if (failures++ == 0) first = c.name + ": " + e.what();
    }
  }
  std::ostringstream os;
  os << cases << " hom-mode rewrites, " << failures << " failures" << (first.empty() ? "" : "; first: " + first);
  return {cases > 0 && failures == 0, os.str()};
}

// --- 8 ----------------------------------------------------------------------

Outcome oracle_independence() {
  std::size_t fixture_words = 0, failures = 0;
  std::string first;
  const auto lib = io::load_system(kFixtures / "uav" / "system.json");
  const auto sc = io::load_scenario(kFixtures / "uav" / "scenario.json").scenario;
  std::vector<CompositeSystem> systems = lib.systems;
  for (const auto& s : sc.scripts) {
    systems.push_back(attacks::apply_script(sc.attacker_view, s).system);
    systems.push_back(
        attacks::apply_script(sc.real, attacks::transport(s, sc.attacker_view, sc.correspondence)).system);
  }
  for (const auto& c : scenarios::hom_cases()) systems.push_back(attacks::apply_rewrite(c.system, c.step).system);

  for (const auto& sys : systems) {
    const auto m = composite(sys);
    const auto radix = m.input_count();
    const auto count = kernels::word_count(radix, kDepth);
    std::vector<std::size_t> codes(kDepth);
    for (std::size_t n = 0; n < count; ++n) {
      kernels::word_at(radix, n, codes);
      Word word;
      for (auto c : codes) word.push_back(decode(m.box().in, c));
      ++fixture_words;
      if (oracle::stagewise_simulate(sys.wiring, sys.components, word) != run(m, word) && failures++ == 0)
        first = sys.name + " on " + render_word(m.box().in, word);
    }
  }

  std::size_t random_failures = 0;
  const auto nets = random::random_networks(kSeed, kOracleInstances);
  for (std::size_t i = 0; i < nets.size(); ++i) {
    const auto& n = nets[i];
    const auto gf = compose(n.g, n.f);
    if (oracle::stagewise_simulate(gf, n.machines, n.word) != run(apply_algebra(gf, n.machines), n.word) &&
        random_failures++ == 0 && first.empty())
      first = "random network " + std::to_string(i);
  }
  std::ostringstream os;
  os << systems.size() << " fixture systems on " << fixture_words << " words (all of length " << kDepth << "), "
     << failures << " mismatches; " << nets.size() << " random networks, " << random_failures << " mismatches"
     << (first.empty() ? "" : "; first: " + first);
  return {failures == 0 && random_failures == 0 && nets.size() >= kOracleInstances, os.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"functor laws", functor_laws},
      {"wiring category laws", category_laws},
      {"yoneda bijection", yoneda},
      {"learning corner cases", learning},
      {"equivalence despite structural error", equivalence_despite_error},
      {"attack effect and transport", attack_transport},
      {"rewriting attack lifts a machine morphism", rewrite_equality},
      {"oracle independence", oracle_independence},
  };
  const auto t0 = Clock::now();
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t = Clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first
              << "): " << o.detail << " [" << seconds_since(t) << " s]" << std::endl;
  }
  const auto total = seconds_since(t0);
  const bool in_time = total < kTotalSeconds;
  std::cout << "total " << total << " s (limit " << kTotalSeconds << " s)" << (in_time ? "" : " exceeded") << '\n';
  return all && in_time ? 0 : 1;
}
