#include "wdsec/cli.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <map>
#include <ostream>

#include "wdsec/dot.hpp"
#include "wdsec/io.hpp"
#include "wdsec/random_networks.hpp"

namespace wdsec::cli {
namespace {

constexpr const char* kWordHelp =
    "Input words are comma-separated tuples, ports within a tuple separated by '|', "
    "e.g. \"0|1,1|0\" for two steps on a two-input box.";

std::string hex(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

/// A machine from a machine.v1 file or the chosen system of a system.v1 file.
MooreMachine machine_from(const std::string& path, const std::optional<std::string>& system) {
  auto doc = io::load(path);
  if (auto* m = std::get_if<MooreMachine>(&doc)) return *m;
  if (auto* s = std::get_if<io::SystemDoc>(&doc)) return composite(s->pick_system(system));
  throw PreconditionError(path + " holds a " + io::schema_of(doc) + " document, expected a machine or a system");
}

CompositeSystem system_from(const std::string& path, const std::optional<std::string>& system) {
  auto doc = io::load(path);
  if (auto* s = std::get_if<io::SystemDoc>(&doc)) return s->pick_system(system);
  if (auto* m = std::get_if<MooreMachine>(&doc)) return CompositeSystem{m->name(), identity_wiring(m->box()), {*m}};
  throw PreconditionError(path + " holds a " + io::schema_of(doc) + " document, expected a machine or a system");
}

void add_box(std::vector<Box>& boxes, const Box& b) {
  for (const auto& x : boxes)
    if (x.name == b.name) {
      if (!(x == b)) throw InvariantError("two different boxes are both called '" + b.name + "'");
      return;
    }
  boxes.push_back(b);
}

/// A self-contained system file holding `systems`.
io::SystemDoc bundle(const std::vector<CompositeSystem>& systems) {
  io::SystemDoc doc;
  for (const auto& s : systems) {
    for (const auto& b : s.wiring.inner) add_box(doc.boxes, b);
    add_box(doc.boxes, s.outer());
    for (const auto& m : s.components) {
      bool present = false;
      for (const auto& x : doc.machines)
        if (x.name() == m.name()) {
          if (!same_tables(x, m)) throw InvariantError("two different machines are both called '" + m.name() + "'");
          present = true;
        }
      if (!present) {
        add_box(doc.boxes, m.box());
        doc.machines.push_back(m);
      }
    }
    doc.systems.push_back(s);
  }
  return doc;
}

void print_log(std::ostream& out, const std::string& title, const std::vector<attacks::LogEntry>& log) {
  out << title << '\n';
  if (log.empty()) out << "  (no steps)\n";
  for (const auto& e : log) {
    out << "  step " << e.step << ": " << e.kind << " " << e.box << " (slot " << e.slot << "), " << e.detail
        << "\n    wiring " << hex(e.wiring_fingerprint) << "\n    components";
    for (auto f : e.component_fingerprints) out << ' ' << hex(f);
    out << '\n';
  }
}

std::string summarize(const io::Document& doc) {
  std::ostringstream os;
  os << "ok: " << io::schema_of(doc);
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, io::SystemDoc>) {
          os << " with " << d.boxes.size() << " boxes, " << d.machines.size() << " machines, " << d.homs.size()
             << " morphisms, " << d.wirings.size() << " wirings, " << d.systems.size() << " systems";
        } else if constexpr (std::is_same_v<T, MooreMachine>) {
          os << " '" << d.name() << "' with " << d.state_count() << " states over " << describe(d.box());
        } else if constexpr (std::is_same_v<T, io::BatteryDoc>) {
          os << " with " << d.tests.size() << " tests";
        } else if constexpr (std::is_same_v<T, attacks::AttackScript>) {
          os << " '" << d.name << "' with " << d.steps.size() << " steps";
        } else if constexpr (std::is_same_v<T, io::ScenarioDoc>) {
          os << " '" << d.scenario.name << "': " << d.scenario.kb.entries.size() << " knowledge-base entries, "
             << d.scenario.scripts.size() << " scripts";
        } else {
          os << " '" << d.category.name << "' with " << d.category.objects.size() << " objects, "
             << d.category.morphisms.size() << " morphisms, " << d.functors.size() << " functors";
        }
      },
      doc);
  return os.str();
}

int cmd_validate(const std::string& file, std::ostream& out, std::ostream& err) {
  const auto doc = io::load(file);
  Report report;
  if (const auto* sys = std::get_if<io::SystemDoc>(&doc)) {
    for (const auto& m : sys->machines)
      for (auto& d : validate_machine(m.to_def()).items) report.items.push_back(d);
  } else if (const auto* m = std::get_if<MooreMachine>(&doc)) {
    report = validate_machine(m->to_def());
  } else if (const auto* fc = std::get_if<io::FinCatDoc>(&doc)) {
    report = fincat::validate_category(fc->category);
    if (report.ok())
      for (const auto& f : fc->functors)
        for (auto& d : fincat::validate_functor(fc->category, f).items) {
          d.message = "functor '" + f.name + "': " + d.message;
          report.items.push_back(d);
        }
  }
  if (!report.ok()) {
    err << "error: " << file << " is invalid\n" << report.to_string();
    return kExitDomain;
  }
  out << summarize(doc) << '\n';
  if (!report.items.empty()) out << report.to_string();
  return kExitOk;
}

int cmd_simulate(const std::string& file, const std::optional<std::string>& system, const std::string& input,
                 std::optional<std::size_t> steps, std::ostream& out) {
  const auto sys = system_from(file, system);
  const auto m = composite(sys);
  auto word = parse_word(m.box().in, input);
  if (steps) {
    if (word.empty()) throw PreconditionError("--steps needs a nonempty --input");
    Word cycled;
    for (std::size_t i = 0; i < *steps; ++i) cycled.push_back(word[i % word.size()]);
    word = std::move(cycled);
  }
  const auto outputs = run(m, word);
  out << "system: " << sys.name << " on " << describe(m.box()) << '\n';
  std::size_t s = m.init();
  for (std::size_t t = 0; t < word.size(); ++t) {
    out << "  t=" << t << " state=" << m.states()[s] << " in=" << render_tuple(m.box().in, word[t])
        << " out=" << render_tuple(m.box().out, outputs[t]) << '\n';
    s = step(m, s, word[t]).state;
  }
  out << "output: " << render_word(m.box().out, outputs) << '\n';
  return kExitOk;
}

void print_learn(std::ostream& out, const probes::LearnResult& r) {
  out << "tests:";
  for (const auto& t : r.tests) out << ' ' << t;
  out << "\nmatrix:\n";
  std::size_t width = 0;
  for (const auto& row : r.rows) width = std::max(width, row.size());
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    out << "  " << std::left << std::setw(static_cast<int>(width)) << r.rows[i];
    for (auto v : r.matrix[i]) out << "  " << std::setw(8) << probes::to_string(v);
    if (r.witness[i]) out << "  first difference: " << *r.witness[i];
    out << '\n';
  }
  out << "unavailable:";
  if (r.unavailable_tests.empty()) out << " none";
  for (const auto& t : r.unavailable_tests) out << ' ' << t;
  out << "\ncandidates:";
  if (r.candidates.empty()) out << " none";
  for (const auto& c : r.candidates) out << ' ' << c;
  out << "\nclassification: " << probes::to_string(r.classification) << '\n';
}

int learn_exit(probes::Classification c) {
  switch (c) {
    case probes::Classification::exact: return kExitOk;
    case probes::Classification::ambiguous: return kExitAmbiguous;
    case probes::Classification::unknown: return kExitUnknown;
  }
  return kExitDomain;
}

int cmd_learn(const std::string& target_file, const std::optional<std::string>& system, const std::string& kb_dir,
              const std::string& battery_file, std::ostream& out) {
  const auto target = machine_from(target_file, system);
  const auto kb = io::load_kb(kb_dir, target.box());
  const auto battery = io::load_battery(battery_file);
  probes::MachineOracle oracle(target);
  const auto r = probes::yoneda_filter(kb, battery.tests, oracle);
  out << "target: " << target_file << " over " << describe(target.box()) << '\n';
  out << "knowledge base: " << kb.entries.size() << " entries\n";
  print_learn(out, r);
  return learn_exit(r.classification);
}

int cmd_attack(const std::string& scenario_file, const std::string& script_name,
               const std::optional<std::string>& emit, std::size_t depth, std::ostream& out) {
  const auto doc = io::load_scenario(scenario_file);
  const auto& sc = doc.scenario;
  const auto& script = sc.script(script_name);
  const auto on_view = attacks::apply_script(sc.attacker_view, script);
  const auto moved = attacks::transport(script, sc.attacker_view, sc.correspondence);
  const auto on_real = attacks::apply_script(sc.real, moved);

  out << "script: " << script.name << " (" << script.steps.size() << " steps, " << moved.steps.size()
      << " after transport)\n";
  print_log(out, "attacker view '" + sc.attacker_view.name + "':", on_view.log);
  print_log(out, "real system '" + sc.real.name + "':", on_real.log);
  for (const auto& w : on_real.witnesses)
    out << "lifted morphism " << w.name << ": " << w.source.state_count() << " -> " << w.target.state_count()
        << " states, commutes\n";

  const auto diff = attacks::attack_diff(sc.real, on_real.system, depth);
  out << "effect on the real system:\n" << attacks::render(diff, sc.real.outer());
  const auto view_m = composite(on_view.system);
  const auto real_m = composite(on_real.system).with_box(view_m.box());
  out << "attacked view and attacked real system trace-equivalent to depth " << depth << ": "
      << (oracle::trace_equivalent(view_m, real_m, depth) ? "yes" : "no") << '\n';

  if (emit) {
    auto view_sys = on_view.system;
    auto real_sys = on_real.system;
    view_sys.name += " / " + script.name;
    real_sys.name += " / " + script.name;
    auto bundled = bundle({view_sys, real_sys});
    bundled.main = real_sys.name;
    io::write_file(*emit, io::dump(io::to_json(bundled)));
    out << "wrote " << *emit << '\n';
  }
  return kExitOk;
}

int cmd_diff(const std::string& a, const std::string& b, const std::optional<std::string>& system_a,
             const std::optional<std::string>& system_b, std::size_t depth, std::ostream& out) {
  const auto sa = system_from(a, system_a);
  const auto sb = system_from(b, system_b);
  const auto r = attacks::attack_diff(sa, sb, depth);
  out << "a: " << sa.name << "\nb: " << sb.name << '\n' << attacks::render(r, sa.outer());
  return r.equivalent ? kExitOk : kExitDiffers;
}

int cmd_yoneda(const std::string& file, const std::string& object, const std::string& functor, std::ostream& out) {
  const auto doc = io::load_fincat(file);
  const auto& f = doc.functor(functor);
  const auto w = fincat::yoneda_check(doc.category, object, f);
  out << "category: " << doc.category.name << "\nobject: " << object << "\nfunctor: " << f.name << '\n';
  out << "|Nat(Hom(" << object << ",-), " << f.name << ")| = " << w.nat_count << '\n';
  out << "|" << f.name << "(" << object << ")| = " << w.element_count << '\n';
  for (const auto& [i, x] : w.pairs) out << "  eta#" << i << " -> " << x << '\n';
  out << "bijection: confirmed\n";
  return kExitOk;
}

int cmd_iso(const std::string& file, const std::string& a, const std::string& b, std::ostream& out) {
  const auto doc = io::load_fincat(file);
  const auto r = fincat::representable_iso_check(doc.category, a, b);
  out << "Hom(" << a << ",-) ~ Hom(" << b << ",-): " << (r.isomorphic ? "yes" : "no") << " ("
      << r.natural_isos << " natural isomorphisms)\n";
  if (r.witness) out << "witness: " << r.witness->forward << " : " << a << " -> " << b << ", " << r.witness->backward
                     << " : " << b << " -> " << a << '\n';
  return r.isomorphic ? kExitOk : kExitDiffers;
}

int cmd_laws(std::uint64_t seed, std::size_t count, std::size_t depth, std::ostream& out) {
  const auto r = random::check_laws(seed, count, depth);
  out << "networks: " << r.networks << " (seed " << seed << ", depth " << depth << ")\n";
  out << "identity failures: " << r.identity_failures << '\n';
  out << "composition failures: " << r.composition_failures << '\n';
  out << "oracle failures: " << r.oracle_failures << '\n';
  for (const auto& m : r.messages) out << "  " << m << '\n';
  return r.ok() ? kExitOk : kExitDiffers;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Wiring-diagram security models: compose, probe and attack Moore-machine systems.", "wdsec"};
  app.require_subcommand(1);
  app.footer(kWordHelp);

  std::string file, file_b, input, kb, battery, scenario, script, object, functor, obj_b;
  std::optional<std::string> system, system_b, emit, wiring_name;
  std::optional<std::size_t> steps;
  std::size_t depth = 6, count = 100;
  std::uint64_t seed = 0;

  auto* validate = app.add_subcommand("validate", "Load and check any document");
  validate->add_option("file", file, "Document to check")->required();

  auto* compose_cmd = app.add_subcommand("compose", "Emit the composite machine of a system as machine.v1");
  compose_cmd->add_option("file", file, "system.v1 file")->required();
  compose_cmd->add_option("--system", system, "System name (default: main)");

  auto* simulate = app.add_subcommand("simulate", "Run a system on an input word");
  simulate->add_option("file", file, "system.v1 or machine.v1 file")->required();
  simulate->add_option("--system", system, "System name (default: main)");
  simulate->add_option("--input", input, kWordHelp)->required();
  simulate->add_option("--steps", steps, "Repeat the input word cyclically up to this many steps");

  auto* learn = app.add_subcommand("learn", "Filter a knowledge base by test agreement with a target");
  learn->add_option("--target", file, "Target machine.v1 or system.v1 file")->required();
  learn->add_option("--system", system, "System name inside the target file");
  learn->add_option("--kb", kb, "Directory of machine.v1 entries")->required();
  learn->add_option("--battery", battery, "battery.v1 file")->required();

  auto* attack = app.add_subcommand("attack", "Apply a scenario script to the attacker view and the real system");
  attack->add_option("--scenario", scenario, "scenario.v1 manifest")->required();
  attack->add_option("--script", script, "Script name")->required();
  attack->add_option("--emit", emit, "Write the attacked systems to this system.v1 file");
  attack->add_option("--depth", depth, "Equivalence depth")->capture_default_str();

  auto* diff = app.add_subcommand("diff", "Compare two systems up to a depth");
  diff->add_option("--a", file, "First system.v1 or machine.v1 file")->required();
  diff->add_option("--b", file_b, "Second system.v1 or machine.v1 file")->required();
  diff->add_option("--system-a", system, "System name in the first file");
  diff->add_option("--system-b", system_b, "System name in the second file");
  diff->add_option("--depth", depth, "Equivalence depth")->capture_default_str();

  auto* dot = app.add_subcommand("export-dot", "Render a system wiring as Graphviz DOT");
  dot->add_option("file", file, "system.v1 file")->required();
  dot->add_option("--system", system, "System name (default: main)");
  dot->add_option("--wiring", wiring_name, "Render a named wiring instead of a system");

  auto* yoneda = app.add_subcommand("yoneda-check", "Verify Nat(Hom(A,-), F) ~ F(A) by enumeration");
  yoneda->add_option("file", file, "fincat.v1 file")->required();
  yoneda->add_option("--object", object, "Object A")->required();
  yoneda->add_option("--functor", functor, "Functor F")->required();

  auto* iso = app.add_subcommand("iso-check", "Decide Hom(A,-) ~ Hom(B,-) and exhibit A ~ B");
  iso->add_option("file", file, "fincat.v1 file")->required();
  iso->add_option("--a", object, "Object A")->required();
  iso->add_option("--b", obj_b, "Object B")->required();

  auto* laws = app.add_subcommand("check-laws", "Functor and oracle laws on seeded random networks");
  laws->add_option("--seed", seed, "Random seed")->capture_default_str();
  laws->add_option("--count", count, "Number of networks")->capture_default_str();
  laws->add_option("--depth", depth, "Trace depth")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const auto code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate) return cmd_validate(file, out, err);
    if (*compose_cmd) {
      out << io::dump(io::to_json(composite(io::load_system(file).pick_system(system))));
      return kExitOk;
    }
    if (*simulate) return cmd_simulate(file, system, input, steps, out);
    if (*learn) return cmd_learn(file, system, kb, battery, out);
    if (*attack) return cmd_attack(scenario, script, emit, depth, out);
    if (*diff) return cmd_diff(file, file_b, system, system_b, depth, out);
    if (*dot) {
      const auto doc = io::load_system(file);
      if (wiring_name) out << export_dot(doc.wiring(*wiring_name), *wiring_name);
      else {
        const auto& sys = doc.pick_system(system);
        out << export_dot(sys.wiring, sys.name);
      }
      return kExitOk;
    }
    if (*yoneda) return cmd_yoneda(file, object, functor, out);
    if (*iso) return cmd_iso(file, object, obj_b, out);
    if (*laws) return cmd_laws(seed, count, depth, out);
  } catch (const ValidationError& e) {
    err << "error: validation: " << e.what() << '\n';
    return kExitDomain;
  } catch (const io::LoadError& e) {
    err << "error: load: " << e.what() << '\n';
    return kExitDomain;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace wdsec::cli
