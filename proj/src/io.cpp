#include "wdsec/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace wdsec::io {
namespace fs = std::filesystem;

namespace {

/// A position inside a document, for diagnostics.
class Cursor {
 public:
  Cursor(const Json& j, const std::string& file, std::string path = "")
      : j_(&j), file_(&file), path_(std::move(path)) {}

  const Json& json() const { return *j_; }
  const std::string& path() const { return path_; }
  const std::string& file() const { return *file_; }

  [[noreturn]] void fail(const std::string& message) const { throw LoadError(*file_, path_, message); }

  bool has(const std::string& key) const { return j_->is_object() && j_->contains(key); }

  Cursor at(const std::string& key) const {
    if (!j_->is_object()) fail("expected an object");
    const auto it = j_->find(key);
    if (it == j_->end()) fail("missing field '" + key + "'");
    return Cursor(*it, *file_, path_.empty() ? key : path_ + "." + key);
  }
  std::optional<Cursor> find(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return at(key);
  }
  Cursor at(std::size_t i) const { return Cursor((*j_)[i], *file_, path_ + "[" + std::to_string(i) + "]"); }

  std::vector<Cursor> items() const {
    if (!j_->is_array()) fail("expected an array");
    std::vector<Cursor> out;
    for (std::size_t i = 0; i < j_->size(); ++i) out.push_back(at(i));
    return out;
  }
  std::vector<std::pair<std::string, Cursor>> members() const {
    if (!j_->is_object()) fail("expected an object");
    std::vector<std::pair<std::string, Cursor>> out;
    for (auto it = j_->begin(); it != j_->end(); ++it)
      out.emplace_back(it.key(), Cursor(it.value(), *file_, (path_.empty() ? "" : path_ + ".") + it.key()));
    return out;
  }

  std::string str() const {
    if (!j_->is_string()) fail("expected a string");
    return j_->get<std::string>();
  }
  std::size_t uint() const {
    if (!j_->is_number_unsigned() && !(j_->is_number_integer() && j_->get<long long>() >= 0))
      fail("expected a non-negative integer");
    return j_->get<std::size_t>();
  }
  std::vector<std::string> strings() const {
    std::vector<std::string> out;
    for (const auto& c : items()) out.push_back(c.str());
    return out;
  }

 private:
  const Json* j_;
  const std::string* file_;
  std::string path_;
};

void expect_schema(const Cursor& c, const std::string& schema) {
  const auto s = c.at("schema").str();
  if (s != schema) c.at("schema").fail("expected schema '" + schema + "', found '" + s + "'");
}

template <class T, class Pred>
const T* find_if_ptr(const std::vector<T>& v, Pred p) {
  const auto it = std::find_if(v.begin(), v.end(), p);
  return it == v.end() ? nullptr : &*it;
}

// --- boxes -----------------------------------------------------------------

Ports parse_ports(const Cursor& c) {
  Ports ports;
  for (const auto& p : c.items()) ports.push_back(Port{p.at("name").str(), p.at("alphabet").strings()});
  return ports;
}

Box parse_box(const Cursor& c) {
  Box b{c.at("name").str(), parse_ports(c.at("in")), parse_ports(c.at("out"))};
  try {
    validate_box(b);
  } catch (const Error& e) {
    c.fail(e.what());
  }
  return b;
}

Json ports_json(const Ports& ports) {
  Json a = Json::array();
  for (const auto& p : ports) a.push_back(Json{{"name", p.name}, {"alphabet", p.alphabet}});
  return a;
}

// --- machines --------------------------------------------------------------

MooreMachine parse_machine_body(const Cursor& c, const Box& box) {
  MachineDef def;
  def.name = c.at("name").str();
  def.box = box;
  def.states = c.at("states").strings();
  def.init = c.at("init").str();
  for (const auto& t : c.at("update").items())
    def.update.push_back({t.at("state").str(), t.at("input").strings(), t.at("next").str()});
  for (const auto& r : c.at("readout").items())
    def.readout.push_back({r.at("state").str(), r.at("output").strings()});
  const auto report = validate_machine(def);
  if (!report.ok()) c.fail("invalid machine '" + def.name + "'\n" + report.to_string());
  return MooreMachine::from_def(def);
}

Json machine_tables(const MooreMachine& m, Json j) {
  const auto def = m.to_def();
  j["states"] = def.states;
  j["init"] = def.init;
  Json update = Json::array();
  for (const auto& t : def.update) update.push_back(Json{{"state", t.state}, {"input", t.input}, {"next", t.next}});
  j["update"] = std::move(update);
  Json readout = Json::array();
  for (const auto& r : def.readout) readout.push_back(Json{{"state", r.state}, {"output", r.output}});
  j["readout"] = std::move(readout);
  return j;
}

// --- wirings ---------------------------------------------------------------

std::size_t box_slot(const Cursor& c, const std::vector<Box>& boxes, const char* side) {
  if (c.json().is_number()) {
    const auto i = c.uint();
    if (i >= boxes.size()) c.fail(std::string(side) + " box index " + std::to_string(i) + " out of range");
    return i;
  }
  const auto name = c.str();
  std::size_t found = npos, hits = 0;
  for (std::size_t i = 0; i < boxes.size(); ++i)
    if (boxes[i].name == name) {
      found = i;
      ++hits;
    }
  if (hits == 0) c.fail("no " + std::string(side) + " box '" + name + "'");
  if (hits > 1) c.fail(std::string(side) + " box name '" + name + "' is ambiguous; use an index");
  return found;
}

std::size_t port_slot(const Cursor& c, const Ports& ports, const Box& box, const char* side) {
  const auto name = c.str();
  const auto i = port_index(ports, name);
  if (i == npos) c.fail("box '" + box.name + "' has no " + side + " port '" + name + "'");
  return i;
}

std::size_t symbol_index(const Cursor& c, const Alphabet& a) {
  const auto s = c.str();
  const auto it = std::find(a.begin(), a.end(), s);
  if (it == a.end()) c.fail("symbol '" + s + "' is not in the alphabet of the port");
  return static_cast<std::size_t>(it - a.begin());
}

PortRef parse_ref(const Cursor& c, const Wiring& w) {
  if (c.has("inner")) {
    const auto b = box_slot(c.at("inner"), w.inner, "inner");
    return inner_out(b, port_slot(c.at("port"), w.inner[b].out, w.inner[b], "output"));
  }
  if (c.has("outer")) {
    const auto b = box_slot(c.at("outer"), w.outer, "outer");
    return outer_in(b, port_slot(c.at("port"), w.outer[b].in, w.outer[b], "input"));
  }
  c.fail("a reference needs 'inner' or 'outer'");
}

SourceExpr parse_source(const Cursor& c, const Wiring& w, const Alphabet& target) {
  if (c.has("const")) return Const{symbol_index(c.at("const"), target)};
  if (c.has("table")) {
    const auto t = c.at("table");
    Table table;
    std::vector<std::size_t> radix;
    for (const auto& r : t.at("refs").items()) {
      table.refs.push_back(parse_ref(r, w));
      radix.push_back(ref_alphabet(w, table.refs.back()).size());
    }
    std::size_t size = 1;
    for (auto r : radix) size *= r;
    table.values.assign(size, npos);
    for (const auto& row : t.at("rows").items()) {
      const auto key = row.at("key").items();
      if (key.size() != table.refs.size())
        row.at("key").fail("key has " + std::to_string(key.size()) + " symbols for " +
                           std::to_string(table.refs.size()) + " references");
      std::size_t code = 0;
      for (std::size_t i = 0; i < key.size(); ++i)
        code = code * radix[i] + symbol_index(key[i], ref_alphabet(w, table.refs[i]));
      if (table.values[code] != npos) row.fail("duplicate key");
      table.values[code] = symbol_index(row.at("value"), target);
    }
    if (std::count(table.values.begin(), table.values.end(), npos) != 0)
      t.at("rows").fail("table is not total: " + std::to_string(std::count(table.values.begin(), table.values.end(), npos)) +
                        " keys missing");
    return table;
  }
  return parse_ref(c, w);
}

std::vector<Box> box_list(const Cursor& c, const SystemDoc& doc) {
  std::vector<Box> out;
  const auto items = c.json().is_string() ? std::vector<Cursor>{c} : c.items();
  for (const auto& b : items) {
    try {
      out.push_back(doc.box(b.str()));
    } catch (const Error& e) {
      b.fail(e.what());
    }
  }
  return out;
}

Wiring parse_wiring_object(const Cursor& c, const SystemDoc& doc) {
  Wiring w;
  w.inner = box_list(c.at("inner"), doc);
  w.outer = box_list(c.at("outer"), doc);
  w.in_map.resize(w.inner.size());
  w.out_map.resize(w.outer.size());
  std::vector<std::vector<bool>> seen_in(w.inner.size()), seen_out(w.outer.size());
  for (std::size_t b = 0; b < w.inner.size(); ++b) {
    w.in_map[b].assign(w.inner[b].in.size(), Const{});
    seen_in[b].assign(w.inner[b].in.size(), false);
  }
  for (std::size_t b = 0; b < w.outer.size(); ++b) {
    w.out_map[b].assign(w.outer[b].out.size(), Const{});
    seen_out[b].assign(w.outer[b].out.size(), false);
  }
  for (const auto& e : c.at("in_map").items()) {
    const auto b = box_slot(e.at("box"), w.inner, "inner");
    const auto p = port_slot(e.at("port"), w.inner[b].in, w.inner[b], "input");
    if (seen_in[b][p]) e.fail("port '" + w.inner[b].in[p].name + "' of '" + w.inner[b].name + "' assigned twice");
    seen_in[b][p] = true;
    w.in_map[b][p] = parse_source(e.at("src"), w, w.inner[b].in[p].alphabet);
  }
  for (const auto& e : c.at("out_map").items()) {
    const auto b = box_slot(e.at("box"), w.outer, "outer");
    const auto p = port_slot(e.at("port"), w.outer[b].out, w.outer[b], "output");
    if (seen_out[b][p]) e.fail("port '" + w.outer[b].out[p].name + "' of '" + w.outer[b].name + "' assigned twice");
    seen_out[b][p] = true;
    w.out_map[b][p] = parse_source(e.at("src"), w, w.outer[b].out[p].alphabet);
  }
  for (std::size_t b = 0; b < w.inner.size(); ++b)
    for (std::size_t p = 0; p < seen_in[b].size(); ++p)
      if (!seen_in[b][p])
        c.at("in_map").fail("no source for input '" + w.inner[b].in[p].name + "' of inner box '" +
                            w.inner[b].name + "'");
  for (std::size_t b = 0; b < w.outer.size(); ++b)
    for (std::size_t p = 0; p < seen_out[b].size(); ++p)
      if (!seen_out[b][p])
        c.at("out_map").fail("no source for output '" + w.outer[b].out[p].name + "' of outer box '" +
                             w.outer[b].name + "'");
  try {
    validate_wiring(w);
  } catch (const Error& e) {
    c.fail(e.what());
  }
  return w;
}

Wiring parse_wiring_expr(const Cursor& c, const SystemDoc& doc) {
  try {
    if (c.json().is_string()) return doc.wiring(c.str());
    if (c.has("inner")) return parse_wiring_object(c, doc);
    if (c.has("compose")) {
      std::vector<Wiring> chain;
      for (const auto& e : c.at("compose").items()) chain.push_back(parse_wiring_expr(e, doc));
      if (chain.empty()) c.fail("empty composition");
      return compose_chain(chain);
    }
    if (c.has("tensor")) {
      std::vector<Wiring> parts;
      for (const auto& e : c.at("tensor").items()) parts.push_back(parse_wiring_expr(e, doc));
      if (parts.empty()) c.fail("empty tensor");
      return tensor(parts);
    }
    if (c.has("id")) return identity_wiring(box_list(c.at("id"), doc));
    if (c.has("normalize")) return normalize(parse_wiring_expr(c.at("normalize"), doc));
  } catch (const LoadError&) {
    throw;
  } catch (const Error& e) {
    c.fail(e.what());
  }
  c.fail("expected a wiring name, a wiring object, or one of compose / tensor / id / normalize");
}

Json box_ref_json(const std::vector<Box>& boxes, std::size_t i) {
  std::size_t hits = 0;
  for (const auto& b : boxes) hits += b.name == boxes[i].name;
  return hits == 1 ? Json(boxes[i].name) : Json(i);
}

Json ref_json(const Wiring& w, const PortRef& r) {
  if (r.side == Side::inner_out)
    return Json{{"inner", box_ref_json(w.inner, r.box)}, {"port", w.inner[r.box].out[r.port].name}};
  return Json{{"outer", box_ref_json(w.outer, r.box)}, {"port", w.outer[r.box].in[r.port].name}};
}

Json source_json(const Wiring& w, const SourceExpr& e, const Alphabet& target) {
  if (const auto* r = std::get_if<PortRef>(&e)) return ref_json(w, *r);
  if (const auto* k = std::get_if<Const>(&e)) return Json{{"const", target.at(k->symbol)}};
  const auto& t = std::get<Table>(e);
  Json refs = Json::array();
  std::vector<const Alphabet*> alphas;
  for (const auto& r : t.refs) {
    refs.push_back(ref_json(w, r));
    alphas.push_back(&ref_alphabet(w, r));
  }
  Json rows = Json::array();
  for (std::size_t code = 0; code < t.values.size(); ++code) {
    std::vector<std::string> key(t.refs.size());
    auto rest = code;
    for (std::size_t i = t.refs.size(); i-- > 0;) {
      key[i] = (*alphas[i])[rest % alphas[i]->size()];
      rest /= alphas[i]->size();
    }
    rows.push_back(Json{{"key", key}, {"value", target.at(t.values[code])}});
  }
  return Json{{"table", Json{{"refs", refs}, {"rows", rows}}}};
}

Json names_json(const std::vector<Box>& boxes) {
  Json a = Json::array();
  for (const auto& b : boxes) a.push_back(b.name);
  return a;
}

// --- homs, tests -----------------------------------------------------------

MachineHom parse_hom(const Cursor& c, const SystemDoc& doc) {
  auto machine = [&](const char* key) -> const MooreMachine& {
    try {
      return doc.machine(c.at(key).str());
    } catch (const PreconditionError& e) {
      c.at(key).fail(e.what());
    }
  };
  MachineHom h{c.at("name").str(), machine("source"), machine("target"), {}};
  h.state_map.assign(h.source.state_count(), npos);
  for (const auto& [from, to] : c.at("state_map").members()) {
    const auto s = h.source.state_index(from);
    if (s == npos) to.fail("'" + from + "' is not a state of '" + h.source.name() + "'");
    const auto t = h.target.state_index(to.str());
    if (t == npos) to.fail("'" + to.str() + "' is not a state of '" + h.target.name() + "'");
    h.state_map[s] = t;
  }
  for (std::size_t s = 0; s < h.state_map.size(); ++s)
    if (h.state_map[s] == npos) c.at("state_map").fail("state '" + h.source.states()[s] + "' is not mapped");
  if (const auto v = check_hom(h)) c.fail("not a machine morphism (" + v->kind + "): " + v->message);
  return h;
}

const char* kind_name(probes::TestKind k) {
  switch (k) {
    case probes::TestKind::trace_set: return "trace_set";
    case probes::TestKind::state_set: return "state_set";
    case probes::TestKind::terminal: return "terminal";
    case probes::TestKind::output_image: return "output_image";
  }
  return "?";
}

probes::Test parse_test(const Cursor& c) {
  probes::Test t;
  t.name = c.at("name").str();
  const auto kind = c.at("kind").str();
  if (kind == "trace_set") {
    t.kind = probes::TestKind::trace_set;
    t.param = c.at("depth").uint();
  } else if (kind == "state_set") {
    t.kind = probes::TestKind::state_set;
  } else if (kind == "terminal") {
    t.kind = probes::TestKind::terminal;
  } else if (kind == "output_image") {
    t.kind = probes::TestKind::output_image;
    t.param = c.at("step").uint();
  } else {
    c.at("kind").fail("unknown test kind '" + kind + "'");
  }
  t.comparator = t.kind == probes::TestKind::state_set ? probes::Comparator::cardinality
                                                        : probes::Comparator::equality;
  if (const auto cmp = c.find("comparator")) {
    const auto s = cmp->str();
    if (s == "equality") t.comparator = probes::Comparator::equality;
    else if (s == "cardinality") t.comparator = probes::Comparator::cardinality;
    else cmp->fail("unknown comparator '" + s + "'");
  }
  return t;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(path.string(), "", "cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

// --- lookups ---------------------------------------------------------------

const Box& SystemDoc::box(const std::string& name) const {
  if (const auto* b = find_if_ptr(boxes, [&](const Box& x) { return x.name == name; })) return *b;
  throw PreconditionError("unknown box '" + name + "'");
}
const MooreMachine& SystemDoc::machine(const std::string& name) const {
  if (const auto* m = find_if_ptr(machines, [&](const MooreMachine& x) { return x.name() == name; }))
    return *m;
  throw PreconditionError("unknown machine '" + name + "'");
}
const MachineHom& SystemDoc::hom(const std::string& name) const {
  if (const auto* h = find_if_ptr(homs, [&](const MachineHom& x) { return x.name == name; })) return *h;
  throw PreconditionError("unknown morphism '" + name + "'");
}
const Wiring& SystemDoc::wiring(const std::string& name) const {
  if (const auto* w = find_if_ptr(wirings, [&](const NamedWiring& x) { return x.name == name; }))
    return w->wiring;
  throw PreconditionError("unknown wiring '" + name + "'");
}
const CompositeSystem& SystemDoc::system(const std::string& name) const {
  if (const auto* s = find_if_ptr(systems, [&](const CompositeSystem& x) { return x.name == name; }))
    return *s;
  throw PreconditionError("unknown system '" + name + "'");
}
const CompositeSystem& SystemDoc::pick_system(const std::optional<std::string>& name) const {
  if (name) return system(*name);
  if (main) return system(*main);
  if (systems.size() == 1) return systems.front();
  throw PreconditionError("the file defines " + std::to_string(systems.size()) +
                          " systems and no 'main'; pass --system");
}

const fincat::FinSetFunctor& FinCatDoc::functor(const std::string& name) const {
  if (const auto* f = find_if_ptr(functors, [&](const fincat::FinSetFunctor& x) { return x.name == name; }))
    return *f;
  throw PreconditionError("unknown functor '" + name + "'");
}

// --- parsing ---------------------------------------------------------------

SystemDoc parse_system(const Json& j, const std::string& file) {
  const Cursor root(j, file);
  expect_schema(root, "system.v1");
  SystemDoc doc;
  std::set<std::string> names;
  auto unique = [&](const Cursor& c, const std::string& kind, const std::string& name) {
    if (!names.insert(kind + ":" + name).second) c.fail("duplicate " + kind + " '" + name + "'");
  };
  for (const auto& b : root.at("boxes").items()) {
    doc.boxes.push_back(parse_box(b));
    unique(b, "box", doc.boxes.back().name);
  }
  if (const auto ms = root.find("machines"))
    for (const auto& m : ms->items()) {
      Box box;
      try {
        box = doc.box(m.at("box").str());
      } catch (const PreconditionError& e) {
        m.at("box").fail(e.what());
      }
      doc.machines.push_back(parse_machine_body(m, box));
      unique(m, "machine", doc.machines.back().name());
    }
  if (const auto hs = root.find("homs"))
    for (const auto& h : hs->items()) {
      doc.homs.push_back(parse_hom(h, doc));
      unique(h, "hom", doc.homs.back().name);
    }
  if (const auto ws = root.find("wirings"))
    for (const auto& w : ws->items()) {
      const auto name = w.at("name").str();
      doc.wirings.push_back({name, parse_wiring_object(w, doc)});
      unique(w, "wiring", name);
    }
  if (const auto ss = root.find("systems"))
    for (const auto& s : ss->items()) {
      CompositeSystem sys;
      sys.name = s.at("name").str();
      sys.wiring = parse_wiring_expr(s.at("wiring"), doc);
      if (sys.wiring.outer.size() != 1) s.at("wiring").fail("a system wiring needs exactly one outer box");
      const auto comps = s.at("components").items();
      if (comps.size() != sys.wiring.inner.size())
        s.at("components").fail("wiring has " + std::to_string(sys.wiring.inner.size()) + " inner boxes, " +
                                 std::to_string(comps.size()) + " components given");
      for (std::size_t i = 0; i < comps.size(); ++i) {
        try {
          sys.components.push_back(doc.machine(comps[i].str()).with_box(sys.wiring.inner[i]));
        } catch (const Error& e) {
          comps[i].fail(e.what());
        }
      }
      try {
        validate_system(sys);
      } catch (const Error& e) {
        s.fail(e.what());
      }
      doc.systems.push_back(std::move(sys));
      unique(s, "system", doc.systems.back().name);
    }
  if (const auto m = root.find("main")) {
    doc.main = m->str();
    if (!find_if_ptr(doc.systems, [&](const CompositeSystem& s) { return s.name == *doc.main; }))
      m->fail("no system named '" + *doc.main + "'");
  }
  return doc;
}

MooreMachine parse_machine(const Json& j, const std::string& file) {
  const Cursor root(j, file);
  expect_schema(root, "machine.v1");
  return parse_machine_body(root, parse_box(root.at("box")));
}

BatteryDoc parse_battery(const Json& j, const std::string& file) {
  const Cursor root(j, file);
  expect_schema(root, "battery.v1");
  BatteryDoc d;
  std::set<std::string> names;
  for (const auto& t : root.at("tests").items()) {
    d.tests.push_back(parse_test(t));
    if (!names.insert(d.tests.back().name).second) t.fail("duplicate test '" + d.tests.back().name + "'");
  }
  return d;
}

attacks::AttackScript parse_attack(const Json& j, const SystemDoc& lib, const std::string& file) {
  const Cursor root(j, file);
  expect_schema(root, "attack.v1");
  attacks::AttackScript script{root.at("name").str(), {}};
  for (const auto& s : root.at("steps").items()) {
    const auto tc = s.at("target");
    const attacks::Slot target =
        tc.json().is_number() ? attacks::Slot{tc.uint()} : attacks::Slot{tc.str()};
    const auto type = s.at("type").str();
    try {
      if (type == "rewrite") {
        if (const auto r = s.find("replace")) {
          script.steps.push_back(attacks::RewriteStep{target, attacks::Replace{lib.machine(r->str())}});
        } else {
          const auto h = s.at("hom");
          const auto names = h.json().is_string() ? std::vector<std::string>{h.str()} : h.at("compose").strings();
          if (names.empty()) h.fail("empty composition");
          auto hom = lib.hom(names.back());
          for (auto it = names.rbegin() + 1; it != names.rend(); ++it) hom = compose_hom(lib.hom(*it), hom);
          script.steps.push_back(attacks::RewriteStep{target, attacks::ViaHom{hom}});
        }
      } else if (type == "rewire") {
        script.steps.push_back(attacks::RewireStep{target, parse_wiring_expr(s.at("endo"), lib)});
      } else {
        s.at("type").fail("unknown step type '" + type + "'");
      }
    } catch (const LoadError&) {
      throw;
    } catch (const Error& e) {
      s.fail(e.what());
    }
  }
  return script;
}

FinCatDoc parse_fincat(const Json& j, const std::string& file) {
  const Cursor root(j, file);
  expect_schema(root, "fincat.v1");
  FinCatDoc d;
  auto& cat = d.category;
  cat.name = root.at("name").str();
  cat.objects = root.at("objects").strings();
  for (const auto& m : root.at("morphisms").items())
    cat.morphisms.push_back({m.at("id").str(), m.at("src").str(), m.at("tgt").str()});
  for (const auto& [obj, id] : root.at("identity").members()) cat.identity[obj] = id.str();
  for (const auto& t : root.at("composition").items()) {
    const auto v = t.strings();
    if (v.size() != 3) t.fail("expected [g, f, g o f]");
    cat.composition.push_back({v[0], v[1], v[2]});
  }
  if (const auto fs = root.find("functors"))
    for (const auto& f : fs->items()) {
      fincat::FinSetFunctor fun;
      fun.name = f.at("name").str();
      for (const auto& [obj, elems] : f.at("objects").members()) fun.object_map[obj] = elems.strings();
      for (const auto& [mor, fn] : f.at("morphisms").members()) {
        auto& map = fun.morphism_map[mor];
        for (const auto& [x, y] : fn.members()) map[x] = y.str();
      }
      d.functors.push_back(std::move(fun));
    }
  return d;
}

// --- files -----------------------------------------------------------------

Json read_json(const fs::path& path) {
  const auto text = slurp(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw LoadError(path.string(), "line " + std::to_string(line) + ", column " + std::to_string(col),
                    "malformed JSON");
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionError("cannot write " + path.string());
  out << text;
}

SystemDoc load_system(const fs::path& path) { return parse_system(read_json(path), path.string()); }
MooreMachine load_machine(const fs::path& path) { return parse_machine(read_json(path), path.string()); }
BatteryDoc load_battery(const fs::path& path) { return parse_battery(read_json(path), path.string()); }
FinCatDoc load_fincat(const fs::path& path) { return parse_fincat(read_json(path), path.string()); }
attacks::AttackScript load_attack(const fs::path& path, const SystemDoc& lib) {
  return parse_attack(read_json(path), lib, path.string());
}

probes::KnowledgeBase load_kb(const fs::path& dir, const Box& box) {
  if (!fs::is_directory(dir)) throw LoadError(dir.string(), "", "not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  probes::KnowledgeBase kb{box, {}};
  for (const auto& f : files) {
    auto m = load_machine(f);
    if (!same_interface(m.box(), box))
      throw LoadError(f.string(), "box", "entry lives over " + describe(m.box()) + ", expected " + describe(box));
    kb.entries.push_back({m.name(), std::move(m)});
  }
  return kb;
}

ScenarioDoc load_scenario(const fs::path& path) {
  const auto j = read_json(path);
  const auto file = path.string();
  const Cursor root(j, file);
  expect_schema(root, "scenario.v1");
  const auto base = path.parent_path();
  ScenarioDoc d;
  d.systems_file = root.at("systems").str();
  d.kb_dir = root.at("kb").str();
  d.battery_file = root.at("battery").str();
  d.script_files = root.at("scripts").strings();
  d.real = root.at("real").str();
  d.attacker_view = root.at("attacker_view").str();

  d.systems = load_system(base / d.systems_file);
  auto& s = d.scenario;
  s.name = root.at("name").str();
  try {
    s.real = d.systems.system(d.real);
  } catch (const PreconditionError& e) {
    root.at("real").fail(e.what());
  }
  try {
    s.attacker_view = d.systems.system(d.attacker_view);
  } catch (const PreconditionError& e) {
    root.at("attacker_view").fail(e.what());
  }
  for (const auto& e : root.at("correspondence").items())
    s.correspondence.push_back({e.at("view").str(), e.at("real").strings()});
  try {
    attacks::validate_correspondence(s.correspondence, s.attacker_view, s.real);
  } catch (const Error& e) {
    root.at("correspondence").fail(e.what());
  }
  s.kb = load_kb(base / d.kb_dir, s.real.outer());
  s.battery = load_battery(base / d.battery_file).tests;
  for (const auto& f : d.script_files) s.scripts.push_back(load_attack(base / f, d.systems));
  if (const auto n = root.find("notes")) s.notes = n->strings();
  return d;
}

Document load(const fs::path& path) {
  const auto j = read_json(path);
  const auto file = path.string();
  const Cursor root(j, file);
  const auto schema = root.at("schema").str();
  if (schema == "system.v1") return parse_system(j, file);
  if (schema == "machine.v1") return parse_machine(j, file);
  if (schema == "battery.v1") return parse_battery(j, file);
  if (schema == "scenario.v1") return load_scenario(path);
  if (schema == "fincat.v1") return parse_fincat(j, file);
  if (schema == "attack.v1") {
    const auto lib = load_system(path.parent_path() / root.at("systems").str());
    return parse_attack(j, lib, file);
  }
  root.at("schema").fail("unknown schema '" + schema + "'");
}

std::string schema_of(const Document& d) {
  static const char* names[] = {"system.v1", "machine.v1", "battery.v1", "attack.v1", "scenario.v1", "fincat.v1"};
  return names[d.index()];
}

// --- writing ---------------------------------------------------------------

Json box_json(const Box& b) {
  return Json{{"name", b.name}, {"in", ports_json(b.in)}, {"out", ports_json(b.out)}};
}

Json machine_body(const MooreMachine& m) {
  return machine_tables(m, Json{{"name", m.name()}, {"box", m.box().name}});
}

Json hom_json(const MachineHom& h) {
  Json map = Json::object();
  for (std::size_t s = 0; s < h.state_map.size(); ++s)
    map[h.source.states()[s]] = h.target.states()[h.state_map[s]];
  return Json{{"name", h.name}, {"source", h.source.name()}, {"target", h.target.name()}, {"state_map", map}};
}

Json wiring_json(const std::string& name, const Wiring& w) {
  Json j = Json::object();
  if (!name.empty()) j["name"] = name;
  j["inner"] = names_json(w.inner);
  j["outer"] = w.outer.size() == 1 ? Json(w.outer[0].name) : names_json(w.outer);
  Json in = Json::array();
  for (std::size_t b = 0; b < w.inner.size(); ++b)
    for (std::size_t p = 0; p < w.inner[b].in.size(); ++p)
      in.push_back(Json{{"box", box_ref_json(w.inner, b)},
                        {"port", w.inner[b].in[p].name},
                        {"src", source_json(w, w.in_map[b][p], w.inner[b].in[p].alphabet)}});
  j["in_map"] = std::move(in);
  Json out = Json::array();
  for (std::size_t b = 0; b < w.outer.size(); ++b)
    for (std::size_t p = 0; p < w.outer[b].out.size(); ++p)
      out.push_back(Json{{"box", box_ref_json(w.outer, b)},
                         {"port", w.outer[b].out[p].name},
                         {"src", source_json(w, w.out_map[b][p], w.outer[b].out[p].alphabet)}});
  j["out_map"] = std::move(out);
  return j;
}

Json to_json(const SystemDoc& d) {
  Json j{{"schema", "system.v1"}};
  Json boxes = Json::array();
  for (const auto& b : d.boxes) boxes.push_back(box_json(b));
  j["boxes"] = std::move(boxes);
  Json machines = Json::array();
  for (const auto& m : d.machines) machines.push_back(machine_body(m));
  j["machines"] = std::move(machines);
  Json homs = Json::array();
  for (const auto& h : d.homs) homs.push_back(hom_json(h));
  j["homs"] = std::move(homs);
  Json wirings = Json::array();
  for (const auto& w : d.wirings) wirings.push_back(wiring_json(w.name, w.wiring));
  j["wirings"] = std::move(wirings);
  Json systems = Json::array();
  for (const auto& s : d.systems) {
    Json comps = Json::array();
    for (const auto& m : s.components) {
      const auto& lib = d.machine(m.name());
      if (!same_tables(lib, m))
        throw PreconditionError("component '" + m.name() + "' of system '" + s.name +
                                "' differs from the machine of that name");
      comps.push_back(m.name());
    }
    systems.push_back(Json{{"name", s.name}, {"wiring", wiring_json("", s.wiring)}, {"components", comps}});
  }
  j["systems"] = std::move(systems);
  if (d.main) j["main"] = *d.main;
  return j;
}

Json to_json(const MooreMachine& m) {
  return machine_tables(m, Json{{"schema", "machine.v1"}, {"name", m.name()}, {"box", box_json(m.box())}});
}

Json to_json(const BatteryDoc& d) {
  Json tests = Json::array();
  for (const auto& t : d.tests) {
    Json e{{"name", t.name}, {"kind", kind_name(t.kind)}};
    if (t.kind == probes::TestKind::trace_set) e["depth"] = t.param;
    if (t.kind == probes::TestKind::output_image) e["step"] = t.param;
    e["comparator"] = t.comparator == probes::Comparator::equality ? "equality" : "cardinality";
    tests.push_back(std::move(e));
  }
  return Json{{"schema", "battery.v1"}, {"tests", tests}};
}

Json to_json(const attacks::AttackScript& s, const SystemDoc& lib) {
  Json steps = Json::array();
  for (const auto& step : s.steps) {
    Json e = Json::object();
    const auto& target = std::visit([](const auto& x) -> const attacks::Slot& { return x.target; }, step);
    if (const auto* rw = std::get_if<attacks::RewriteStep>(&step)) {
      e["type"] = "rewrite";
      e["target"] = std::holds_alternative<std::size_t>(target) ? Json(std::get<std::size_t>(target))
                                                                : Json(std::get<std::string>(target));
      if (const auto* rep = std::get_if<attacks::Replace>(&rw->mode)) {
        if (!(lib.machine(rep->machine.name()) == rep->machine))
          throw PreconditionError("machine '" + rep->machine.name() + "' differs from the library entry");
        e["replace"] = rep->machine.name();
      } else {
        const auto& h = std::get<attacks::ViaHom>(rw->mode).hom;
        if (const auto* named = find_if_ptr(lib.homs, [&](const MachineHom& x) { return x == h; })) {
          e["hom"] = named->name;
        } else {
          std::vector<std::string> parts;
          std::string rest = h.name;
          for (auto pos = rest.find(" o "); pos != std::string::npos; pos = rest.find(" o ")) {
            parts.push_back(rest.substr(0, pos));
            rest = rest.substr(pos + 3);
          }
          parts.push_back(rest);
          MachineHom check = lib.hom(parts.back());
          for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it) check = compose_hom(lib.hom(*it), check);
          if (!(check == h)) throw PreconditionError("morphism '" + h.name + "' is not expressible from the library");
          e["hom"] = Json{{"compose", parts}};
        }
      }
    } else {
      const auto& rw2 = std::get<attacks::RewireStep>(step);
      e["type"] = "rewire";
      e["target"] = std::holds_alternative<std::size_t>(target) ? Json(std::get<std::size_t>(target))
                                                                : Json(std::get<std::string>(target));
      if (const auto* named = find_if_ptr(lib.wirings, [&](const NamedWiring& x) { return x.wiring == rw2.endo; }))
        e["endo"] = named->name;
      else
        e["endo"] = wiring_json("", rw2.endo);
    }
    steps.push_back(std::move(e));
  }
  return Json{{"schema", "attack.v1"}, {"name", s.name}, {"steps", steps}};
}

Json to_json(const FinCatDoc& d) {
  const auto& c = d.category;
  Json morphisms = Json::array();
  for (const auto& m : c.morphisms) morphisms.push_back(Json{{"id", m.id}, {"src", m.src}, {"tgt", m.tgt}});
  Json identity = Json::object();
  for (const auto& [o, id] : c.identity) identity[o] = id;
  Json comp = Json::array();
  for (const auto& e : c.composition) comp.push_back(Json::array({e.g, e.f, e.result}));
  Json functors = Json::array();
  for (const auto& f : d.functors) {
    Json objs = Json::object();
    for (const auto& [o, elems] : f.object_map) objs[o] = elems;
    Json mors = Json::object();
    for (const auto& [m, fn] : f.morphism_map) {
      Json map = Json::object();
      for (const auto& [x, y] : fn) map[x] = y;
      mors[m] = map;
    }
    functors.push_back(Json{{"name", f.name}, {"objects", objs}, {"morphisms", mors}});
  }
  return Json{{"schema", "fincat.v1"}, {"name", c.name},        {"objects", c.objects},
              {"morphisms", morphisms}, {"identity", identity}, {"composition", comp},
              {"functors", functors}};
}

}  // namespace wdsec::io
