// Writes the shipped fixtures: fixtures/uav, fixtures/fincat, fixtures/invalid
// and the DOT goldens under tests/golden. Usage: wdsec-fixtures <root>

#include <filesystem>
#include <iostream>
#include <set>

#include "wdsec/dot.hpp"
#include "wdsec/io.hpp"

namespace fs = std::filesystem;
using namespace wdsec;
using io::Json;

namespace {

Json ids(std::initializer_list<const char*> names) {
  Json parts = Json::array();
  for (const auto* n : names) parts.push_back(Json{{"id", Json::array({n})}});
  return parts;
}

Json uav_real_expr() {
  return Json{{"compose",
               {"uav-top",
                Json{{"tensor",
                      {Json{{"compose", {"uav-sensors", Json{{"tensor", ids({"IMU1", "IMU2", "G", "P"})}}}}},
                       Json{{"id", {"C"}}}, Json{{"id", {"D"}}}}}}}}};
}

Json uav_view_expr() {
  return Json{{"compose",
               {"uav-top-view",
                Json{{"tensor",
                      {Json{{"compose", {"uav-sensors-view", Json{{"tensor", ids({"I'", "G'", "P'"})}}}}},
                       Json{{"id", {"C'"}}}, Json{{"id", {"D'"}}}}}}}}};
}

Json wrap_expr(const char* context, Json uav, const char* box) {
  return Json{{"normalize", {{"compose", {context, Json{{"tensor", {std::move(uav), Json{{"id", {box}}}}}}}}}}};
}

Wiring field_context() {
  using scenarios::boxes::environment;
  return {{scenarios::boxes::uav(), environment()},
          {scenarios::boxes::field()},
          {{outer_in(0, 0), inner_out(1, 0)}, {inner_out(0, 0)}},
          {{inner_out(0, 0)}}};
}

Wiring mission_context() {
  return {{scenarios::boxes::uav(), scenarios::boxes::gcs()},
          {scenarios::boxes::mission()},
          {{inner_out(1, 0), outer_in(0, 1)}, {outer_in(0, 0)}},
          {{inner_out(0, 0)}}};
}

void add_box(io::SystemDoc& d, const Box& b) {
  for (const auto& x : d.boxes)
    if (x.name == b.name) return;
  d.boxes.push_back(b);
}

void add_machine(io::SystemDoc& d, const MooreMachine& m) {
  add_box(d, m.box());
  for (const auto& x : d.machines)
    if (x.name() == m.name()) return;
  d.machines.push_back(m);
}

io::SystemDoc uav_library() {
  namespace sc = scenarios;
  const auto real = sc::build_uav_real();
  const auto view = sc::build_uav_attacker_view();
  const auto field = sc::wrap_environment(real);
  const auto mission = sc::wrap_gcs(real);

  io::SystemDoc d;
  for (const auto& b : {sc::boxes::uav(), sc::boxes::sensors("L"), sc::boxes::sensors("L'"), sc::boxes::field(),
                        sc::boxes::mission()})
    add_box(d, b);
  for (const auto* sys : {&real, &view, &field, &mission})
    for (const auto& m : sys->components) add_machine(d, m);
  for (const auto& m : {sc::machines::gps_hacked(), sc::machines::gps_symmetric(), sc::machines::gps_backdoor(),
                        sc::machines::gps_backdoor2(), sc::machines::gps_split(),
                        sc::machines::environment_spoofed(), sc::machines::gcs_social()})
    add_machine(d, m);
  d.homs = {sc::homs::backdoor(), sc::homs::backdoor_next(), sc::homs::collapse()};
  d.wirings = {
      {"uav-top", sc::top_wiring(sc::boxes::sensors("L"), sc::boxes::control("C"), sc::boxes::dynamics("D"))},
      {"uav-sensors", sc::sensors_real_wiring()},
      {"uav-top-view",
       sc::top_wiring(sc::boxes::sensors("L'"), sc::boxes::control("C'"), sc::boxes::dynamics("D'"))},
      {"uav-sensors-view", sc::sensors_view_wiring()},
      {"imu-refinement", sc::imu_refinement()},
      {"gps-dropping-refinement", sc::gps_dropping_refinement()},
      {"gps-swap", sc::gps_swap_rewiring().endo},
      {"gps-constant-feed", sc::gps_constant_feed().endo},
      {"field-context", field_context()},
      {"mission-context", mission_context()},
  };
  d.systems = {real, view, field, mission};
  d.main = real.name;
  return d;
}

/// system.json with every system written as a wiring expression over the
/// named wirings; loading it must give back exactly `lib`.
Json uav_system_json(const io::SystemDoc& lib) {
  auto j = io::to_json(lib);
  const Json exprs[] = {uav_real_expr(), uav_view_expr(), wrap_expr("field-context", uav_real_expr(), "Environment"),
                        wrap_expr("mission-context", uav_real_expr(), "GCS")};
  for (std::size_t i = 0; i < 4; ++i) j["systems"][i]["wiring"] = exprs[i];
  return j;
}

std::string slug(const std::string& s) {
  std::string out;
  for (char c : s) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '-';
  return out;
}

void write(const fs::path& p, const Json& j) {
  io::write_file(p, io::dump(j));
  std::cout << "wrote " << p.string() << '\n';
}

void write_uav(const fs::path& dir) {
  const auto lib = uav_library();
  const auto sys_json = uav_system_json(lib);
  if (!(io::parse_system(sys_json) == lib)) throw InvariantError("system expressions do not reproduce the library");
  write(dir / "system.json", sys_json);

  const auto sc = scenarios::build_uav_scenario();
  for (std::size_t i = 0; i < sc.kb.entries.size(); ++i) {
    const auto& e = sc.kb.entries[i];
    const auto file = "kb/" + std::to_string(i + 1) + "-" + slug(e.name) + ".json";
    write(dir / file, io::to_json(e.machine));
  }
  write(dir / "battery.json", io::to_json(io::BatteryDoc{sc.battery}));
  write(dir / "battery-terminal.json", io::to_json(io::BatteryDoc{{probes::terminal()}}));

  Json scripts = Json::array();
  for (const auto& s : sc.scripts) {
    auto j = io::to_json(s, lib);
    j["systems"] = "../system.json";
    const auto file = "attacks/" + s.name + ".json";
    write(dir / file, j);
    scripts.push_back(file);
  }
  // Context attacks on the wrapped systems; not part of the scenario.
  const attacks::AttackScript spoof{
      "spoof", {attacks::RewriteStep{std::string("Environment"), attacks::Replace{scenarios::machines::environment_spoofed()}}}};
  const attacks::AttackScript social{
      "social", {attacks::RewriteStep{std::string("GCS"), attacks::Replace{scenarios::machines::gcs_social()}}}};
  for (const auto* s : {&spoof, &social}) {
    auto j = io::to_json(*s, lib);
    j["systems"] = "../system.json";
    write(dir / ("context-attacks/" + s->name + ".json"), j);
  }

  Json corr = Json::array();
  for (const auto& c : sc.correspondence) corr.push_back(Json{{"view", c.view}, {"real", c.real}});
  Json manifest{{"schema", "scenario.v1"},
                {"name", sc.name},
                {"systems", "system.json"},
                {"real", sc.real.name},
                {"attacker_view", sc.attacker_view.name},
                {"correspondence", corr},
                {"kb", "kb"},
                {"battery", "battery.json"},
                {"scripts", scripts},
                {"notes", sc.notes}};
  write(dir / "scenario.json", manifest);

  // Single machines for the CLI: the real composite and the attacker's model.
  write(dir / "targets/uav-real.json", io::to_json(composite(sc.real).renamed("uav-real")));
  write(dir / "targets/uav-view.json", io::to_json(composite(sc.attacker_view).renamed("uav-view")));
}

// --- finite categories -------------------------------------------------------

struct CatBuilder {
  fincat::FinCategory cat;

  explicit CatBuilder(std::string name, std::vector<std::string> objects) {
    cat.name = std::move(name);
    cat.objects = std::move(objects);
    for (const auto& o : cat.objects) {
      const auto id = "id_" + o;
      cat.morphisms.push_back({id, o, o});
      cat.identity[o] = id;
    }
  }
  CatBuilder& arrow(const std::string& id, const std::string& src, const std::string& tgt) {
    cat.morphisms.push_back({id, src, tgt});
    return *this;
  }
  CatBuilder& comp(const std::string& g, const std::string& f, const std::string& r) {
    cat.composition.push_back({g, f, r});
    return *this;
  }
  /// Adds the identity composites and returns the category.
  fincat::FinCategory done() {
    std::vector<fincat::CompositeEntry> unit;
    for (const auto& m : cat.morphisms) {
      const auto& l = cat.identity.at(m.tgt);
      const auto& r = cat.identity.at(m.src);
      unit.push_back({l, m.id, m.id});
      if (l != m.id || r != m.id) unit.push_back({m.id, r, m.id});
    }
    std::set<std::pair<std::string, std::string>> seen;
    std::vector<fincat::CompositeEntry> all;
    for (const auto& e : unit)
      if (seen.insert({e.g, e.f}).second) all.push_back(e);
    for (const auto& e : cat.composition) all.push_back(e);
    cat.composition = std::move(all);
    return cat;
  }
};

/// Every object to `elems`, every morphism to the identity function.
fincat::FinSetFunctor constant(const fincat::FinCategory& c, const std::string& name,
                               const std::vector<std::string>& elems) {
  fincat::FinSetFunctor f;
  f.name = name;
  for (const auto& o : c.objects) f.object_map[o] = elems;
  for (const auto& m : c.morphisms) {
    auto& fn = f.morphism_map[m.id];
    for (const auto& x : elems) fn[x] = x;
  }
  return f;
}

fincat::FinSetFunctor functor(std::string name, std::map<std::string, std::vector<std::string>> objects,
                              std::map<std::string, std::map<std::string, std::string>> arrows) {
  return {std::move(name), std::move(objects), std::move(arrows)};
}

/// Fills in identity morphisms for a functor given on non-identity arrows.
fincat::FinSetFunctor with_identities(const fincat::FinCategory& c, fincat::FinSetFunctor f) {
  for (const auto& [o, id] : c.identity) {
    auto& fn = f.morphism_map[id];
    for (const auto& x : f.object_map.at(o)) fn[x] = x;
  }
  return f;
}

std::vector<io::FinCatDoc> categories() {
  std::vector<io::FinCatDoc> out;
  auto add = [&](fincat::FinCategory c, std::vector<fincat::FinSetFunctor> fs) {
    std::vector<fincat::FinSetFunctor> all = {constant(c, "point", {"x"}), constant(c, "pair", {"x", "y"}),
                                              constant(c, "empty", {})};
    for (const auto& o : c.objects) all.push_back(fincat::hom_functor(c, o));
    for (auto& f : fs) all.push_back(with_identities(c, std::move(f)));
    out.push_back({std::move(c), std::move(all)});
  };

  add(CatBuilder("terminal", {"*"}).done(), {});

  add(CatBuilder("arrow", {"0", "1"}).arrow("f", "0", "1").done(),
      {functor("collapse", {{"0", {"a", "b"}}, {"1", {"c"}}}, {{"f", {{"a", "c"}, {"b", "c"}}}}),
       functor("inclusion", {{"0", {"a"}}, {"1", {"a", "b"}}}, {{"f", {{"a", "a"}}}})});

  add(CatBuilder("z2", {"*"}).arrow("g", "*", "*").comp("g", "g", "id_*").done(),
      {functor("flip", {{"*", {"a", "b"}}}, {{"g", {{"a", "b"}, {"b", "a"}}}}),
       functor("regular", {{"*", {"e", "g"}}}, {{"g", {{"e", "g"}, {"g", "e"}}}}),
       functor("flip-fix", {{"*", {"a", "b", "c"}}}, {{"g", {{"a", "b"}, {"b", "a"}, {"c", "c"}}}})});

  // {e, a, z}: a a = z, z absorbing.
  add(CatBuilder("nilpotent-monoid", {"*"})
          .arrow("a", "*", "*")
          .arrow("z", "*", "*")
          .comp("a", "a", "z")
          .comp("a", "z", "z")
          .comp("z", "a", "z")
          .comp("z", "z", "z")
          .done(),
      {functor("counter", {{"*", {"0", "1", "2"}}},
               {{"a", {{"0", "1"}, {"1", "2"}, {"2", "2"}}}, {"z", {{"0", "2"}, {"1", "2"}, {"2", "2"}}}}),
       functor("collapse", {{"*", {"p", "q"}}}, {{"a", {{"p", "q"}, {"q", "q"}}}, {"z", {{"p", "q"}, {"q", "q"}}}})});

  add(CatBuilder("chain3", {"0", "1", "2"})
          .arrow("f", "0", "1")
          .arrow("g", "1", "2")
          .arrow("gf", "0", "2")
          .comp("g", "f", "gf")
          .done(),
      {functor("merge", {{"0", {"a", "b"}}, {"1", {"a", "b"}}, {"2", {"c"}}},
               {{"f", {{"a", "a"}, {"b", "b"}}}, {"g", {{"a", "c"}, {"b", "c"}}}, {"gf", {{"a", "c"}, {"b", "c"}}}})});

  add(CatBuilder("iso-pair", {"A", "B"})
          .arrow("u", "A", "B")
          .arrow("v", "B", "A")
          .comp("v", "u", "id_A")
          .comp("u", "v", "id_B")
          .done(),
      {functor("twist", {{"A", {"a", "b"}}, {"B", {"c", "d"}}}, {{"u", {{"a", "d"}, {"b", "c"}}}, {"v", {{"c", "b"}, {"d", "a"}}}})});

  add(CatBuilder("square", {"A", "B", "C", "D"})
          .arrow("f", "A", "B")
          .arrow("g", "A", "C")
          .arrow("h", "B", "D")
          .arrow("k", "C", "D")
          .arrow("d", "A", "D")
          .comp("h", "f", "d")
          .comp("k", "g", "d")
          .done(),
      {functor("fold", {{"A", {"a"}}, {"B", {"b1", "b2"}}, {"C", {"c"}}, {"D", {"t"}}},
               {{"f", {{"a", "b1"}}}, {"g", {{"a", "c"}}}, {"h", {{"b1", "t"}, {"b2", "t"}}}, {"k", {{"c", "t"}}},
                {"d", {{"a", "t"}}}})});

  add(CatBuilder("discrete2", {"X", "Y"}).done(), {functor("sizes", {{"X", {"a"}}, {"Y", {"b", "c", "d"}}}, {})});

  add(CatBuilder("parallel-pair", {"A", "B"}).arrow("s", "A", "B").arrow("t", "A", "B").done(),
      {functor("graph", {{"A", {"e1", "e2"}}, {"B", {"v1", "v2"}}},
               {{"s", {{"e1", "v1"}, {"e2", "v2"}}}, {"t", {{"e1", "v2"}, {"e2", "v2"}}}})});
  return out;
}

void write_fincat(const fs::path& dir) {
  for (const auto& doc : categories()) {
    const auto report = fincat::validate_category(doc.category);
    if (!report.ok()) throw InvariantError(doc.category.name + ": " + report.to_string());
    for (const auto& f : doc.functors) {
      const auto r = fincat::validate_functor(doc.category, f);
      if (!r.ok()) throw InvariantError(doc.category.name + "/" + f.name + ": " + r.to_string());
    }
    write(dir / (doc.category.name + ".json"), io::to_json(doc));
  }
}

void write_invalid(const fs::path& dir) {
  auto arrow = CatBuilder("missing-composite", {"0", "1", "2"})
                   .arrow("f", "0", "1")
                   .arrow("g", "1", "2")
                   .arrow("gf", "0", "2")
                   .done();
  std::erase_if(arrow.composition, [](const auto& e) { return e.g == "g" && e.f == "f"; });
  write(dir / "missing-composite.json", io::to_json(io::FinCatDoc{arrow, {}}));

  const auto g = scenarios::boxes::gps("G'");
  io::SystemDoc small;
  small.boxes = {g};
  small.machines = {scenarios::machines::gps("G'")};
  small.wirings = {{"swap", scenarios::gps_swap_rewiring().endo}};
  auto j = io::to_json(small);
  j["wirings"][0]["in_map"][0]["src"]["port"] = "g9";
  write(dir / "unknown-port.json", j);

  auto bad_machine = io::to_json(scenarios::machines::gps("G"));
  bad_machine["update"].erase(bad_machine["update"].size() - 1);
  write(dir / "partial-table.json", bad_machine);
}

void write_goldens(const fs::path& dir) {
  const auto one = binary_box("X", {"a"}, {"b"});
  io::write_file(dir / "identity.dot", export_dot(identity_wiring(one), "identity"));
  const auto real = scenarios::build_uav_real();
  io::write_file(dir / "uav_real.dot", export_dot(real.wiring, real.name));
  io::write_file(dir / "uav_real_architecture.dot", export_dot(scenarios::uav_real_architecture(), "UAV"));
  const auto swapped = attacks::apply_rewire(scenarios::build_uav_attacker_view(), scenarios::gps_swap_rewiring());
  io::write_file(dir / "uav_view_swap.dot", export_dot(swapped.wiring, "UAV' swap"));
  const auto view = scenarios::build_uav_attacker_view();
  io::write_file(dir / "uav_view.dot", export_dot(view.wiring, view.name));
  std::cout << "wrote DOT goldens to " << dir.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: wdsec-fixtures <root>\n";
    return 64;
  }
  const fs::path root = argv[1];
  try {
    write_uav(root / "fixtures" / "uav");
    write_fincat(root / "fixtures" / "fincat");
    write_invalid(root / "fixtures" / "invalid");
    write_goldens(root / "tests" / "golden");
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 65;
  }
  return 0;
}
