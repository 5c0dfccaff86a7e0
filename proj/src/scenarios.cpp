#include "wdsec/scenarios.hpp"

namespace wdsec::scenarios {
namespace {

const std::vector<std::string> kBit = {"s0", "s1"};

template <class Next>
MooreMachine bit_machine(const std::string& name, const Box& box, Next&& next, bool invert = false) {
  return MooreMachine::tabulate(
      name, box, kBit, 0, [&](std::size_t s, const Tuple& x) { return next(s, x); },
      [&](std::size_t s) { return Tuple{invert ? 1 - s : s}; });
}

std::size_t gps_bit(const Tuple& x) { return x[0] == 1 && x[1] == 0 ? 1 : 0; }

Wiring make_wiring(std::vector<Box> inner, Box outer, std::vector<std::vector<SourceExpr>> in_map,
                   std::vector<SourceExpr> out_map) {
  Wiring w{std::move(inner), {std::move(outer)}, std::move(in_map), {std::move(out_map)}};
  validate_wiring(w);
  return w;
}

}  // namespace

namespace boxes {
Box uav() { return binary_box("UAV", {"u1", "u2"}, {"y"}); }
Box sensors(const std::string& name) { return binary_box(name, {"l1", "l2"}, {"l"}); }
Box control(const std::string& name) { return binary_box(name, {"c1", "c2"}, {"c"}); }
Box dynamics(const std::string& name) { return binary_box(name, {"d1"}, {"d"}); }
Box imu(const std::string& name) { return binary_box(name, {"a1", "a2"}, {"i"}); }
Box gps(const std::string& name) { return binary_box(name, {"g1", "g2"}, {"g"}); }
Box position(const std::string& name, std::size_t inputs) {
  std::vector<std::string> ins;
  for (std::size_t i = 1; i <= inputs; ++i) ins.push_back("p" + std::to_string(i));
  return binary_box(name, ins, {"p"});
}
Box environment() { return binary_box("Environment", {"pos"}, {"gps"}); }
Box gcs() { return binary_box("GCS", {"op"}, {"cmd"}); }
Box field() { return binary_box("Field", {"u1"}, {"y"}); }
Box mission() { return binary_box("Mission", {"op", "u2"}, {"y"}); }
}  // namespace boxes

namespace machines {

MooreMachine imu(const std::string& name) {
  return bit_machine(name, boxes::imu(name), [](std::size_t, const Tuple& x) { return x[0] & x[1]; });
}

MooreMachine gps(const std::string& name) {
  return bit_machine(name, boxes::gps(name), [](std::size_t, const Tuple& x) { return gps_bit(x); });
}

MooreMachine gps_hacked() {
  return bit_machine("G'_H", boxes::gps("G'"), [](std::size_t, const Tuple& x) { return gps_bit(x); },
                     true);
}

MooreMachine gps_symmetric() {
  return bit_machine("G'_sym", boxes::gps("G'"),
                     [](std::size_t, const Tuple& x) { return x[0] & x[1]; });
}

MooreMachine gps_backdoor() {
  return MooreMachine::tabulate(
      "G'_B", boxes::gps("G'"), {"s0", "s1", "s2"}, 0,
      [](std::size_t s, const Tuple& x) { return s == 2 ? 2 : gps_bit(x); },
      [](std::size_t s) { return Tuple{s == 0 ? 0u : 1u}; });
}

MooreMachine gps_backdoor2() {
  return MooreMachine::tabulate(
      "G'_B2", boxes::gps("G'"), {"s0", "s1", "s2", "s3"}, 0,
      [](std::size_t s, const Tuple& x) { return s >= 2 ? s : gps_bit(x); },
      [](std::size_t s) { return Tuple{s == 1 || s == 2 ? 1u : 0u}; });
}

MooreMachine gps_split() {
  return MooreMachine::tabulate(
      "G'_split", boxes::gps("G'"), {"s0", "s1a", "s1b"}, 0,
      [](std::size_t s, const Tuple& x) -> std::size_t {
        if (!gps_bit(x)) return 0;
        return s == 0 ? 1 : 2;
      },
      [](std::size_t s) { return Tuple{s == 0 ? 0u : 1u}; });
}

MooreMachine position_view() {
  return bit_machine("P'", boxes::position("P'", 2),
                     [](std::size_t, const Tuple& x) { return x[0] ^ x[1]; });
}

MooreMachine position_real() {
  return bit_machine("P", boxes::position("P", 3),
                     [](std::size_t, const Tuple& x) { return (x[0] & x[1]) ^ x[2]; });
}

MooreMachine control(const std::string& name) {
  return bit_machine(name, boxes::control(name),
                     [](std::size_t, const Tuple& x) { return x[0] ^ x[1]; });
}

MooreMachine dynamics(const std::string& name) {
  return bit_machine(name, boxes::dynamics(name), [](std::size_t, const Tuple& x) { return x[0]; });
}

MooreMachine environment() {
  return bit_machine("Environment", boxes::environment(),
                     [](std::size_t, const Tuple& x) { return x[0]; });
}

MooreMachine environment_spoofed() {
  return MooreMachine::tabulate(
      "Environment_spoofed", boxes::environment(), {"spoof"}, 0,
      [](std::size_t, const Tuple&) { return std::size_t{0}; },
      [](std::size_t) { return Tuple{1}; });
}

MooreMachine gcs() {
  return bit_machine("GCS", boxes::gcs(), [](std::size_t, const Tuple& x) { return x[0]; });
}

MooreMachine gcs_social() {
  return bit_machine("GCS_social", boxes::gcs(), [](std::size_t, const Tuple& x) { return x[0]; },
                     true);
}

MooreMachine constant_uav() {
  return MooreMachine::tabulate(
      "uav-constant", boxes::uav(), {"idle"}, 0,
      [](std::size_t, const Tuple&) { return std::size_t{0}; },
      [](std::size_t) { return Tuple{0}; });
}

}  // namespace machines

namespace homs {
MachineHom backdoor() { return {"implant", machines::gps("G'"), machines::gps_backdoor(), {0, 1}}; }
MachineHom backdoor_next() {
  return {"implant2", machines::gps_backdoor(), machines::gps_backdoor2(), {0, 1, 2}};
}
MachineHom collapse() { return {"collapse", machines::gps_split(), machines::gps("G'"), {0, 1, 1}}; }
MachineHom not_a_hom() { return {"naive", machines::gps("G'"), machines::gps_hacked(), {0, 1}}; }
}  // namespace homs

Wiring sensors_view_wiring() {
  return make_wiring({boxes::imu("I'"), boxes::gps("G'"), boxes::position("P'", 2)},
                     boxes::sensors("L'"),
                     {{outer_in(0, 0), outer_in(0, 1)},
                      {outer_in(0, 0), outer_in(0, 1)},
                      {inner_out(0, 0), inner_out(1, 0)}},
                     {inner_out(2, 0)});
}

Wiring sensors_real_wiring() {
  return make_wiring({boxes::imu("IMU1"), boxes::imu("IMU2"), boxes::gps("G"), boxes::position("P", 3)},
                     boxes::sensors("L"),
                     {{outer_in(0, 0), outer_in(0, 1)},
                      {outer_in(0, 0), outer_in(0, 1)},
                      {outer_in(0, 0), outer_in(0, 1)},
                      {inner_out(0, 0), inner_out(1, 0), inner_out(2, 0)}},
                     {inner_out(3, 0)});
}

Wiring top_wiring(const Box& l, const Box& c, const Box& d) {
  return make_wiring({l, c, d}, boxes::uav(),
                     {{outer_in(0, 1), inner_out(2, 0)},
                      {outer_in(0, 0), inner_out(0, 0)},
                      {inner_out(1, 0)}},
                     {inner_out(2, 0)});
}

Wiring imu_refinement() {
  Wiring k{{boxes::imu("I'"), boxes::gps("G'"), boxes::position("P'", 2)},
           {boxes::imu("IMU1"), boxes::imu("IMU2"), boxes::gps("G"), boxes::position("P", 3)},
           {{outer_in(0, 0), outer_in(0, 1)},
            {outer_in(2, 0), outer_in(2, 1)},
            {outer_in(3, 0), outer_in(3, 2)}},
           {{inner_out(0, 0)}, {inner_out(0, 0)}, {inner_out(1, 0)}, {inner_out(2, 0)}}};
  validate_wiring(k);
  return k;
}

Wiring gps_dropping_refinement() {
  auto k = imu_refinement();
  k.out_map[2][0] = Const{0};
  validate_wiring(k);
  return k;
}

Architecture uav_view_architecture() {
  return decompose(top_wiring(boxes::sensors("L'"), boxes::control("C'"), boxes::dynamics("D'")),
                   {decompose(sensors_view_wiring(),
                              {atomic(boxes::imu("I'")), atomic(boxes::gps("G'")),
                               atomic(boxes::position("P'", 2))}),
                    atomic(boxes::control("C'")), atomic(boxes::dynamics("D'"))});
}

Architecture uav_real_architecture() {
  return decompose(top_wiring(boxes::sensors("L"), boxes::control("C"), boxes::dynamics("D")),
                   {decompose(sensors_real_wiring(),
                              {atomic(boxes::imu("IMU1")), atomic(boxes::imu("IMU2")),
                               atomic(boxes::gps("G")), atomic(boxes::position("P", 3))}),
                    atomic(boxes::control("C")), atomic(boxes::dynamics("D"))});
}

CompositeSystem build_uav_real() {
  return from_architecture("UAV", uav_real_architecture(),
                           {machines::imu("IMU1"), machines::imu("IMU2"), machines::gps("G"),
                            machines::position_real(), machines::control("C"),
                            machines::dynamics("D")});
}

CompositeSystem build_uav_attacker_view() {
  return from_architecture("UAV'", uav_view_architecture(),
                           {machines::imu("I'"), machines::gps("G'"), machines::position_view(),
                            machines::control("C'"), machines::dynamics("D'")});
}

attacks::RewireStep gps_swap_rewiring() {
  const auto g = boxes::gps("G'");
  Wiring h{{g}, {g}, {{outer_in(0, 1), outer_in(0, 0)}}, {{inner_out(0, 0)}}};
  return {std::string("G'"), h};
}

attacks::RewireStep gps_constant_feed() {
  const auto g = boxes::gps("G'");
  Wiring h{{g}, {g}, {{outer_in(0, 0), Const{0}}}, {{inner_out(0, 0)}}};
  return {std::string("G'"), h};
}

attacks::RewriteStep gps_firmware_rewrite() {
  return {std::string("G'"), attacks::Replace{machines::gps_hacked()}};
}

namespace {

CompositeSystem wrap(const CompositeSystem& uav, const MooreMachine& ctx, const Box& ctx_box,
                     const Box& outer, std::vector<std::vector<SourceExpr>> in_map,
                     const std::string& name) {
  validate_system(uav);
  if (!same_interface(uav.outer(), boxes::uav()))
    throw CompositionError("context wraps need a system over " + describe(boxes::uav()) + ", got " +
                           describe(uav.outer()));
  const auto c = make_wiring({uav.outer(), ctx_box}, outer, std::move(in_map), {inner_out(0, 0)});
  CompositeSystem s{name, normalize(compose(c, tensor({uav.wiring, identity_wiring(ctx_box)}))),
                    uav.components};
  s.components.push_back(ctx.with_box(ctx_box));
  validate_system(s);
  return s;
}

}  // namespace

CompositeSystem wrap_environment(const CompositeSystem& uav, const MooreMachine& env) {
  return wrap(uav, env, boxes::environment(), boxes::field(),
              {{outer_in(0, 0), inner_out(1, 0)}, {inner_out(0, 0)}}, "Field");
}

CompositeSystem wrap_gcs(const CompositeSystem& uav, const MooreMachine& station) {
  return wrap(uav, station, boxes::gcs(), boxes::mission(),
              {{inner_out(1, 0), outer_in(0, 1)}, {outer_in(0, 0)}}, "Mission");
}

std::optional<Word> projection_mismatch(const CompositeSystem& wrapped, const CompositeSystem& uav,
                                        Context kind, std::size_t depth) {
  const auto w = composite(wrapped);
  const auto u = composite(uav);
  const auto& ctx = wrapped.components.back();
  const auto count = kernels::word_count(w.input_count(), depth);
  std::vector<std::size_t> codes(depth);
  for (std::size_t n = 0; n < count; ++n) {
    kernels::word_at(w.input_count(), n, codes);
    Word word;
    for (auto c : codes) word.push_back(decode(w.box().in, c));
    Word expected;
    std::size_t us = u.init(), cs = ctx.init();
    for (const auto& x : word) {
      const auto y = u.readout(us);
      const auto c = ctx.readout(cs);
      expected.push_back(y);
      const Tuple uav_in = kind == Context::environment ? Tuple{x[0], c[0]} : Tuple{c[0], x[1]};
      const Tuple ctx_in = kind == Context::environment ? Tuple{y[0]} : Tuple{x[0]};
      us = u.next(us, encode(u.box().in, uav_in));
      cs = ctx.next(cs, encode(ctx.box().in, ctx_in));
    }
    if (run(w, word) != expected) return word;
  }
  return std::nullopt;
}

MooreMachine reversed_states(const MooreMachine& m, const std::string& name) {
  const auto n = m.state_count();
  std::vector<std::string> names;
  for (std::size_t j = 0; j < n; ++j) names.push_back("q" + std::to_string(j));
  return MooreMachine::tabulate(
      name, m.box(), names, n - 1 - m.init(),
      [&](std::size_t j, const Tuple& x) { return n - 1 - m.next(n - 1 - j, encode(m.box().in, x)); },
      [&](std::size_t j) { return m.readout(n - 1 - j); });
}

probes::KnowledgeBase uav_knowledge_base() {
  const auto real = build_uav_real();
  auto with_gps = [&](const MooreMachine& g, const std::string& name) {
    auto sys = real;
    sys.components[sys.slot("G")] = g.with_box(boxes::gps("G"));
    return composite(sys).renamed(name);
  };
  probes::KnowledgeBase kb{boxes::uav(), {}};
  kb.entries.push_back({"uav-profile-a", reversed_states(composite(real), "uav-profile-a")});
  kb.entries.push_back({"uav-one-imu", composite(build_uav_attacker_view()).renamed("uav-one-imu")});
  kb.entries.push_back({"uav-symmetric-gps", with_gps(machines::gps_symmetric(), "uav-symmetric-gps")});
  kb.entries.push_back({"uav-hacked-gps", with_gps(machines::gps_hacked(), "uav-hacked-gps")});
  kb.entries.push_back({"uav-constant", machines::constant_uav()});
  return kb;
}

const attacks::AttackScript& Scenario::script(const std::string& name) const {
  for (const auto& s : scripts)
    if (s.name == name) return s;
  throw PreconditionError("scenario '" + this->name + "' has no script '" + name + "'");
}

Scenario build_uav_scenario() {
  using attacks::AttackScript;
  using attacks::RewriteStep;
  using attacks::ViaHom;
  const std::string g = "G'";
  Scenario s;
  s.name = "uav";
  s.real = build_uav_real();
  s.attacker_view = build_uav_attacker_view();
  s.correspondence = {{"I'", {"IMU1", "IMU2"}}, {"G'", {"G"}}, {"P'", {"P"}}, {"C'", {"C"}},
                      {"D'", {"D"}}};
  s.kb = uav_knowledge_base();
  s.battery = probes::full_battery(6);
  s.scripts = {
      AttackScript{"firmware", {gps_firmware_rewrite()}},
      AttackScript{"swap", {gps_swap_rewiring()}},
      AttackScript{"combined", {gps_firmware_rewrite(), gps_swap_rewiring()}},
      AttackScript{"double-swap", {gps_swap_rewiring(), gps_swap_rewiring()}},
      AttackScript{"constant-feed", {gps_constant_feed()}},
      AttackScript{"backdoor", {RewriteStep{g, ViaHom{homs::backdoor()}}}},
      AttackScript{"backdoor-chain",
                   {RewriteStep{g, ViaHom{homs::backdoor()}}, RewriteStep{g, ViaHom{homs::backdoor_next()}}}},
      AttackScript{"backdoor-composed",
                   {RewriteStep{g, ViaHom{compose_hom(homs::backdoor_next(), homs::backdoor())}}}},
  };
  s.notes = {
      "L reads (u2, d): the sensed environment and the vehicle state",
      "C reads (u1, l): the ground order and the sensor estimate",
      "D reads c; the UAV output is d",
      "I' and G' both read (l1, l2); P' fuses (i, g)",
      "the real P fuses (i1, i2, g) as (i1 and i2) xor g, which equals i xor g when the IMUs agree",
  };
  return s;
}

std::vector<HomCase> hom_cases() {
  using attacks::RewriteStep;
  using attacks::ViaHom;
  const auto view = build_uav_attacker_view();
  const auto real = build_uav_real();
  auto view_b = view;
  view_b.components[view.slot("G'")] = machines::gps_backdoor();
  auto view_split = view;
  view_split.components[view.slot("G'")] = machines::gps_split();
  auto env = wrap_environment(view);
  return {
      {"implant on the attacker view", view, RewriteStep{std::string("G'"), ViaHom{homs::backdoor()}}},
      {"implant on the real system", real, RewriteStep{std::string("G"), ViaHom{homs::backdoor()}}},
      {"second implant", view_b, RewriteStep{std::string("G'"), ViaHom{homs::backdoor_next()}}},
      {"composed implant", view,
       RewriteStep{std::string("G'"), ViaHom{compose_hom(homs::backdoor_next(), homs::backdoor())}}},
      {"collapse of a split GPS", view_split, RewriteStep{std::string("G'"), ViaHom{homs::collapse()}}},
      {"implant inside the environment wrap", env,
       RewriteStep{std::string("G'"), ViaHom{homs::backdoor()}}},
  };
}

}  // namespace wdsec::scenarios
