#include <doctest.h>

#include "support.hpp"

using namespace wdsec;
using testing::delay;

namespace {

MachineDef constant_def() {
  MachineDef d;
  d.name = "k";
  d.box = binary_box("K", {"x"}, {"y"});
  d.states = {"only"};
  d.init = "only";
  d.update = {{"only", {"0"}, "only"}, {"only", {"1"}, "only"}};
  d.readout = {{"only", {"1"}}};
  return d;
}

MachineDef delay_def() { return delay().to_def(); }

}  // namespace

TEST_CASE("validate_machine") {
  CHECK(validate_machine(constant_def()).ok());
  CHECK(validate_machine(constant_def()).items.empty());

  auto missing = delay_def();
  std::erase_if(missing.update, [](const auto& t) { return t.state == "1" && t.input == std::vector<Symbol>{"0"}; });
  const auto r = validate_machine(missing);
  CHECK_FALSE(r.ok());
  CHECK(r.count("totality") == 1);

  auto alpha = constant_def();
  alpha.readout[0].output = {"2"};
  CHECK(validate_machine(alpha).count("alphabet") == 1);

  auto undeclared = constant_def();
  undeclared.update[0].next = "nowhere";
  CHECK(validate_machine(undeclared).count("structure") == 1);

  auto unreachable = delay_def();
  unreachable.states.push_back("2");
  unreachable.update.push_back({"2", {"0"}, "2"});
  unreachable.update.push_back({"2", {"1"}, "2"});
  unreachable.readout.push_back({"2", {"0"}});
  const auto u = validate_machine(unreachable);
  CHECK(u.ok());
  CHECK(u.count("reachability") == 1);
}

TEST_CASE("machines round-trip through their definition") {
  const auto m = delay();
  CHECK(MooreMachine::from_def(m.to_def()) == m);
  auto bad = m.to_def();
  bad.readout.clear();
  CHECK_THROWS_AS(MooreMachine::from_def(bad), ValidationError);
  try {
    MooreMachine::from_def(bad);
  } catch (const ValidationError& e) {
    CHECK(e.report().count("totality") == 2);
  }
}

TEST_CASE("constructor checks table sizes and ranges") {
  const auto b = binary_box("K", {"x"}, {"y"});
  CHECK_THROWS_AS(MooreMachine("m", b, {"a"}, 0, {0}, {0}), InvariantError);
  CHECK_THROWS_AS(MooreMachine("m", b, {"a"}, 0, {0, 1}, {0}), InvariantError);
  CHECK_THROWS_AS(MooreMachine("m", b, {"a"}, 1, {0, 0}, {0}), InvariantError);
  CHECK_THROWS_AS(MooreMachine("m", b, {"a"}, 0, {0, 0}, {2}), AlphabetError);
}

TEST_CASE("step reads the output before the transition") {
  const auto d = delay();
  const auto r = step(d, 0, {1});
  CHECK(r.state == 1);
  CHECK(r.output == Tuple{0});
  CHECK_THROWS_AS(step(d, 0, {2}), AlphabetError);
  CHECK_THROWS_AS(step(d, 7, {0}), Error);
  const auto k = MooreMachine::from_def(constant_def());
  CHECK(step(k, 0, {0}).output == Tuple{1});
  CHECK(step(k, 0, {1}).output == Tuple{1});
}

TEST_CASE("run folds step from init") {
  const auto d = delay();
  CHECK(run(d, {}).empty());
  CHECK(run(d, {{1}, {0}, {1}}) == Word{{0}, {1}, {0}});
  CHECK(run(testing::delay2(), {{1}, {0}, {1}, {1}}) == Word{{0}, {0}, {1}, {0}});
  CHECK(oracle::run_raw(d, {{1}, {0}, {1}}) == run(d, {{1}, {0}, {1}}));
}

TEST_CASE("interfaces, labels and tables") {
  const auto d = delay();
  const auto e = d.renamed("other");
  CHECK(same_tables(d, e));
  CHECK_FALSE(d == e);
  const auto moved = d.with_box(binary_box("Elsewhere", {"x"}, {"y"}));
  CHECK(same_tables(d, moved));
  CHECK(moved.box().name == "Elsewhere");
  CHECK_THROWS_AS(d.with_box(binary_box("Bad", {"z"}, {"y"})), CompositionError);
  CHECK(d.state_index("1") == 1);
  CHECK(d.state_index("9") == npos);
  CHECK(reachable_states(d) == std::vector<std::size_t>{0, 1});
  CHECK(fingerprint(d) == fingerprint(delay()));
  CHECK(fingerprint(d) == fingerprint(e));
  CHECK(fingerprint(d) != fingerprint(testing::constant(0, d.box())));
}

TEST_CASE("machine morphisms") {
  namespace m = scenarios::machines;
  const auto h = scenarios::homs::backdoor();
  CHECK_FALSE(check_hom(h));
  CHECK_FALSE(is_isomorphism(h));
  CHECK_NOTHROW(require_hom(h));

  const auto naive = scenarios::homs::not_a_hom();
  const auto v = check_hom(naive);
  REQUIRE(v);
  CHECK(v->kind == "readout");
  CHECK_THROWS_AS(require_hom(naive), InvariantError);

  const auto c = scenarios::homs::collapse();
  CHECK_FALSE(check_hom(c));
  CHECK_FALSE(is_isomorphism(c));

  const auto id = identity_hom(m::gps("G'"));
  CHECK(is_isomorphism(id));
  CHECK_FALSE(check_hom(id));

  const auto two = compose_hom(scenarios::homs::backdoor_next(), h);
  CHECK(two.name == "implant2 o implant");
  CHECK(two.state_map == std::vector<std::size_t>{0, 1});
  CHECK_FALSE(check_hom(two));
  CHECK_THROWS_AS(compose_hom(h, h), Error);

  MachineHom bad_init{"x", m::gps("G'"), m::gps("G'"), {1, 1}};
  CHECK(check_hom(bad_init)->kind == "init");
  MachineHom bad_size{"x", m::gps("G'"), m::gps("G'"), {0}};
  CHECK(check_hom(bad_size)->kind == "size");
  MachineHom bad_box{"x", m::gps("G'"), m::imu("I'"), {0, 1}};
  CHECK(check_hom(bad_box)->kind == "box");
}

TEST_CASE("a morphism preserves traces") {
  namespace m = scenarios::machines;
  for (const auto& h : {scenarios::homs::backdoor(), scenarios::homs::backdoor_next(), scenarios::homs::collapse()}) {
    CAPTURE(h.name);
    CHECK(oracle::trace_equivalent(h.source, h.target, 6));
  }
  CHECK_FALSE(oracle::trace_equivalent(m::gps("G'"), m::gps_hacked(), 6));
}
