#include <doctest.h>

#include "support.hpp"

using namespace wdsec;
using namespace wdsec::attacks;
namespace sc = wdsec::scenarios;

namespace {

bool trace_equal(const CompositeSystem& a, const CompositeSystem& b, std::size_t depth = 6) {
  return oracle::trace_equivalent(composite(a), composite(b).with_box(a.outer()), depth);
}

}  // namespace

TEST_CASE("resolve and describe") {
  const auto view = sc::build_uav_attacker_view();
  CHECK(resolve(view, Slot{std::string("G'")}) == 1);
  CHECK(resolve(view, Slot{std::size_t{4}}) == 4);
  CHECK_THROWS_AS(resolve(view, Slot{std::size_t{5}}), PreconditionError);
  CHECK_THROWS_AS(resolve(view, Slot{std::string("G")}), PreconditionError);
  CHECK(describe(Slot{std::size_t{2}}) == "#2");
  CHECK(describe(Slot{std::string("P'")}) == "P'");
}

TEST_CASE("rewrite by replacement") {
  const auto view = sc::build_uav_attacker_view();
  const auto same = apply_rewrite(view, {std::string("G'"), Replace{sc::machines::gps("G'")}});
  CHECK_FALSE(same.witness);
  CHECK(trace_equal(view, same.system));

  const auto hacked = apply_rewrite(view, sc::gps_firmware_rewrite());
  CHECK(hacked.system.wiring == view.wiring);
  auto list = view.components;
  list[1] = sc::machines::gps_hacked().with_box(view.wiring.inner[1]);
  CHECK(composite(hacked.system) == apply_algebra(view.wiring, list, view.name));
  const auto w = oracle::find_distinguishing_word(composite(view), composite(hacked.system), 6);
  REQUIRE(w);
  CHECK(w->size() <= 6);

  CHECK_THROWS_AS(apply_rewrite(view, {std::string("G'"), Replace{testing::delay()}}), CompositionError);
}

TEST_CASE("rewrite along a hom") {
  const auto view = sc::build_uav_attacker_view();
  const auto r = apply_rewrite(view, {std::string("G'"), ViaHom{sc::homs::backdoor()}});
  REQUIRE(r.witness);
  CHECK_FALSE(check_hom(*r.witness));
  CHECK(same_tables(r.witness->source, composite(view)));
  CHECK(same_tables(r.witness->target, composite(r.system)));
  CHECK(trace_equal(view, r.system));

  CHECK_THROWS_AS(apply_rewrite(view, {std::string("G'"), ViaHom{sc::homs::not_a_hom()}}), InvariantError);
  // the implant starts at G', not at the position machine
  CHECK_THROWS_AS(apply_rewrite(view, {std::string("P'"), ViaHom{sc::homs::backdoor()}}), PreconditionError);
}

TEST_CASE("every shipped hom case lifts to a hom of composites") {
  for (const auto& c : sc::hom_cases()) {
    CAPTURE(c.name);
    const auto r = apply_rewrite(c.system, c.step);
    REQUIRE(r.witness);
    CHECK_FALSE(check_hom(*r.witness));
    CHECK(same_tables(r.witness->target, composite(r.system)));
    CHECK(same_tables(r.witness->source, composite(c.system)));
  }
}

TEST_CASE("rewiring") {
  const auto view = sc::build_uav_attacker_view();
  const auto g = sc::boxes::gps("G'");
  const auto id = apply_rewire(view, {std::string("G'"), identity_wiring(g)});
  CHECK(trace_equal(view, id));

  const auto swap = sc::gps_swap_rewiring();
  const auto once = apply_rewire(view, swap);
  CHECK(once.components == view.components);
  const auto w = oracle::find_distinguishing_word(composite(view), composite(once), 6);
  REQUIRE(w);
  CHECK(w->size() <= 6);

  const auto twice = apply_rewire(once, swap);
  CHECK(trace_equal(view, twice));
  const auto composed = apply_rewire(view, {std::string("G'"), compose(swap.endo, swap.endo)});
  CHECK(trace_equal(twice, composed));

  const auto feed = sc::gps_constant_feed();
  CHECK(trace_equal(apply_rewire(apply_rewire(view, swap), feed),
                    apply_rewire(view, {std::string("G'"), compose(swap.endo, feed.endo)})));

  CHECK_THROWS_AS(apply_rewire(view, {std::string("I'"), swap.endo}), CompositionError);
}

TEST_CASE("scripts") {
  const auto s = sc::build_uav_scenario();
  const auto& view = s.attacker_view;
  const auto empty = apply_script(view, AttackScript{"none", {}});
  CHECK(empty.system == view);
  CHECK(empty.log.empty());

  const auto combined = apply_script(view, s.script("combined"));
  REQUIRE(combined.log.size() == 2);
  CHECK(combined.log[0].kind == "rewrite");
  CHECK(combined.log[0].detail == "replace with " + sc::machines::gps_hacked().name());
  CHECK(combined.log[1].kind == "rewire");
  CHECK(combined.log[1].box == "G'");
  CHECK(combined.log[1].detail.starts_with("endo fingerprint "));
  CHECK(combined.log[1].component_fingerprints.size() == 5);
  auto list = view.components;
  list[1] = sc::machines::gps_hacked().with_box(view.wiring.inner[1]);
  const auto expected = apply_algebra(compose(view.wiring, place_endo(view.wiring.inner, 1, sc::gps_swap_rewiring().endo)), list);
  CHECK(oracle::trace_equivalent(composite(combined.system), expected.with_box(view.outer()), 6));

  CHECK(trace_equal(view, apply_script(view, s.script("double-swap")).system));

  const auto chain = apply_script(view, s.script("backdoor-chain"));
  const auto single = apply_script(view, s.script("backdoor-composed"));
  CHECK(chain.witnesses.size() == 2);
  CHECK(single.witnesses.size() == 1);
  CHECK(trace_equal(chain.system, single.system));
  CHECK(same_tables(composite(chain.system), composite(single.system)));
}

TEST_CASE("a failing step reports the partial log") {
  const auto view = sc::build_uav_attacker_view();
  AttackScript bad{"bad", {sc::gps_firmware_rewrite(), RewireStep{std::string("nowhere"), sc::gps_swap_rewiring().endo}}};
  try {
    apply_script(view, bad);
    FAIL("expected ScriptError");
  } catch (const ScriptError& e) {
    CHECK(e.partial_log().size() == 1);
    CHECK(std::string(e.what()).find("step 1") != std::string::npos);
  }
}

TEST_CASE("attack_diff and render") {
  const auto s = sc::build_uav_scenario();
  const auto& view = s.attacker_view;
  const auto eq = attack_diff(view, view, 6);
  CHECK(eq.equivalent);
  CHECK_FALSE(eq.witness);
  CHECK(render(eq, view.outer()).starts_with("equivalent: yes (depth 6)\n"));
  for (const auto& c : eq.battery_results) CHECK(c.agree);

  const auto swapped = apply_script(view, s.script("swap")).system;
  const auto d = attack_diff(view, swapped, 6);
  CHECK_FALSE(d.equivalent);
  REQUIRE(d.witness);
  CHECK(d.witness->size() <= 6);
  CHECK(d.baseline_output != d.attacked_output);
  const auto text = render(d, view.outer());
  CHECK(text.find("witness: ") != std::string::npos);
  CHECK(text.find("test traces6: differ") != std::string::npos);

  CHECK(attack_diff(view, apply_script(view, s.script("double-swap")).system, 6).equivalent);
  const auto wrapped = sc::wrap_environment(view);
  CHECK_THROWS_AS(attack_diff(view, wrapped, 6), CompositionError);
}

TEST_CASE("transport to the real system") {
  const auto s = sc::build_uav_scenario();
  CHECK_NOTHROW(validate_correspondence(s.correspondence, s.attacker_view, s.real));

  AttackScript imu{"imu", {RewriteStep{std::string("I'"), Replace{sc::machines::imu("I'")}}}};
  const auto moved = transport(imu, s.attacker_view, s.correspondence);
  REQUIRE(moved.steps.size() == 2);
  CHECK(std::get<std::string>(std::get<RewriteStep>(moved.steps[0]).target) == "IMU1");
  CHECK(std::get<std::string>(std::get<RewriteStep>(moved.steps[1]).target) == "IMU2");

  for (const auto& script : s.scripts) {
    CAPTURE(script.name);
    const auto on_view = apply_script(s.attacker_view, script).system;
    const auto on_real = apply_script(s.real, transport(script, s.attacker_view, s.correspondence)).system;
    CHECK(trace_equal(on_view, on_real));
    for (std::size_t i = 0; i < on_real.components.size(); ++i)
      if (on_real.wiring.inner[i].name != "G") CHECK(on_real.components[i] == s.real.components[i]);
  }

  auto missing = s.correspondence;
  missing.pop_back();
  CHECK_THROWS_AS(validate_correspondence(missing, s.attacker_view, s.real), InvariantError);
  auto unknown = s.correspondence;
  unknown[1].real = {"G9"};
  CHECK_THROWS_AS(validate_correspondence(unknown, s.attacker_view, s.real), InvariantError);
  auto empty = s.correspondence;
  empty[2].real.clear();
  CHECK_THROWS_AS(validate_correspondence(empty, s.attacker_view, s.real), InvariantError);
  CHECK_THROWS_AS(transport(imu, s.attacker_view, Correspondence{}), PreconditionError);
}
