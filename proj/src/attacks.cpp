#include "wdsec/attacks.hpp"

#include <cstdio>
#include <sstream>

namespace wdsec::attacks {

std::size_t resolve(const CompositeSystem& sys, const Slot& slot) {
  if (const auto* i = std::get_if<std::size_t>(&slot)) {
    if (*i >= sys.components.size())
      throw PreconditionError("slot " + std::to_string(*i) + " out of range for system '" + sys.name +
                              "' with " + std::to_string(sys.components.size()) + " components");
    return *i;
  }
  const auto& name = std::get<std::string>(slot);
  const auto i = sys.slot(name);
  if (i == npos) throw PreconditionError("system '" + sys.name + "' has no component '" + name + "'");
  return i;
}

std::string describe(const Slot& slot) {
  if (const auto* i = std::get_if<std::size_t>(&slot)) return "#" + std::to_string(*i);
  return std::get<std::string>(slot);
}

RewriteResult apply_rewrite(const CompositeSystem& sys, const RewriteStep& step) {
  validate_system(sys);
  const auto i = resolve(sys, step.target);
  const auto& box = sys.wiring.inner[i];
  RewriteResult r{sys, std::nullopt};

  if (const auto* rep = std::get_if<Replace>(&step.mode)) {
    r.system.components[i] = rep->machine.with_box(box);
    return r;
  }

  const auto& h = std::get<ViaHom>(step.mode).hom;
  if (!same_tables(h.source, sys.components[i]))
    throw PreconditionError("morphism '" + h.name + "' does not start at component '" + box.name +
                            "' of system '" + sys.name + "'");
  require_hom(h);
  MachineHom local{h.name, sys.components[i], h.target.with_box(box), h.state_map};
  std::vector<MachineHom> homs;
  for (std::size_t j = 0; j < sys.components.size(); ++j)
    homs.push_back(j == i ? local : identity_hom(sys.components[j]));
  r.system.components[i] = local.target;
  auto lifted = lift_hom(sys.wiring, homs);
  lifted.source = lifted.source.renamed(sys.name);
  lifted.target = lifted.target.renamed(sys.name);
  r.witness = std::move(lifted);
  return r;
}

CompositeSystem apply_rewire(const CompositeSystem& sys, const RewireStep& step) {
  validate_system(sys);
  validate_wiring(step.endo);
  const auto i = resolve(sys, step.target);
  CompositeSystem r = sys;
  r.wiring = normalize(compose(sys.wiring, place_endo(sys.wiring.inner, i, step.endo)));
  return r;
}

namespace {

std::string hex16(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}


LogEntry entry_for(std::size_t n, const std::string& kind, std::size_t slot, const CompositeSystem& s,
                   std::string detail) {
  LogEntry e{n, kind, slot, s.wiring.inner[slot].name, std::move(detail), fingerprint(s.wiring), {}};
  for (const auto& m : s.components) e.component_fingerprints.push_back(fingerprint(m));
  return e;
}

}  // namespace

ScriptResult apply_script(const CompositeSystem& sys, const AttackScript& script) {
  ScriptResult r{sys, {}, {}};
  for (std::size_t n = 0; n < script.steps.size(); ++n) {
    try {
      if (const auto* rw = std::get_if<RewriteStep>(&script.steps[n])) {
        auto out = apply_rewrite(r.system, *rw);
        const auto slot = resolve(r.system, rw->target);
        std::string detail;
        if (const auto* rep = std::get_if<Replace>(&rw->mode)) {
          detail = "replace with " + rep->machine.name();
        } else {
          detail = "hom " + std::get<ViaHom>(rw->mode).hom.name;
        }
        r.system = std::move(out.system);
        if (out.witness) r.witnesses.push_back(std::move(*out.witness));
        r.log.push_back(entry_for(n, "rewrite", slot, r.system, detail));
      } else {
        const auto& wire = std::get<RewireStep>(script.steps[n]);
        const auto slot = resolve(r.system, wire.target);
        r.system = apply_rewire(r.system, wire);
        r.log.push_back(entry_for(n, "rewire", slot, r.system,
                                  "endo fingerprint " + hex16(fingerprint(wire.endo))));
      }
    } catch (const Error& e) {
      throw ScriptError("script '" + script.name + "' step " + std::to_string(n) + ": " + e.what(),
                        r.log);
    }
  }
  return r;
}

DiffReport attack_diff(const CompositeSystem& baseline, const CompositeSystem& attacked,
                       std::size_t depth) {
  if (!same_interface(baseline.outer(), attacked.outer()))
    throw CompositionError("cannot diff " + wdsec::describe(baseline.outer()) + " against " +
                           wdsec::describe(attacked.outer()));
  const auto a = composite(baseline);
  const auto b = composite(attacked).with_box(a.box());
  DiffReport r;
  r.depth = depth;
  r.witness = oracle::find_distinguishing_word(a, b, depth);
  r.equivalent = !r.witness;
  if (r.witness) {
    r.baseline_output = run(a, *r.witness);
    r.attacked_output = run(b, *r.witness);
  }
  r.battery = probes::full_battery(depth);
  for (const auto& t : r.battery)
    r.battery_results.push_back(
        probes::compare_outcomes(t, probes::run_test(t, a), probes::run_test(t, b)));
  return r;
}

std::string render(const DiffReport& r, const Box& outer) {
  std::ostringstream os;
  os << "equivalent: " << (r.equivalent ? "yes" : "no") << " (depth " << r.depth << ")\n";
  if (r.witness) {
    os << "witness: " << render_word(outer.in, *r.witness) << '\n';
    os << "baseline: " << render_word(outer.out, *r.baseline_output) << '\n';
    os << "attacked: " << render_word(outer.out, *r.attacked_output) << '\n';
  }
  for (std::size_t i = 0; i < r.battery.size(); ++i) {
    os << "test " << r.battery[i].name << ": " << (r.battery_results[i].agree ? "agree" : "differ");
    if (r.battery_results[i].witness) os << " [" << *r.battery_results[i].witness << ']';
    os << '\n';
  }
  return os.str();
}

namespace {

const CorrespondenceEntry& lookup(const Correspondence& corr, const std::string& view) {
  for (const auto& e : corr)
    if (e.view == view) return e;
  throw PreconditionError("no correspondence entry for component '" + view + "'");
}

}  // namespace

AttackScript transport(const AttackScript& script, const CompositeSystem& view,
                       const Correspondence& corr) {
  AttackScript out{script.name, {}};
  for (const auto& step : script.steps) {
    const auto& target = std::visit([](const auto& s) -> const Slot& { return s.target; }, step);
    const auto& name = view.wiring.inner[resolve(view, target)].name;
    for (const auto& real : lookup(corr, name).real) {
      auto moved = step;
      std::visit([&](auto& s) { s.target = real; }, moved);
      out.steps.push_back(std::move(moved));
    }
  }
  return out;
}

void validate_correspondence(const Correspondence& corr, const CompositeSystem& view,
                             const CompositeSystem& real) {
  for (const auto& b : view.wiring.inner) {
    std::size_t hits = 0;
    for (const auto& e : corr) hits += e.view == b.name;
    if (hits != 1)
      throw InvariantError("component '" + b.name + "' needs exactly one correspondence entry, has " +
                           std::to_string(hits));
  }
  for (const auto& e : corr) {
    if (view.slot(e.view) == npos)
      throw InvariantError("correspondence names unknown view component '" + e.view + "'");
    if (e.real.empty()) throw InvariantError("correspondence for '" + e.view + "' is empty");
    for (const auto& r : e.real)
      if (real.slot(r) == npos)
        throw InvariantError("correspondence maps '" + e.view + "' to unknown component '" + r + "'");
  }
}

}  // namespace wdsec::attacks
