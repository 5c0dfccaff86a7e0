#include <doctest.h>

#include <algorithm>

#include "support.hpp"

using namespace wdsec;
using namespace wdsec::probes;
using testing::delay;

namespace {

// Answers from a machine and counts the queries.
class CountingOracle final : public TargetOracle {
 public:
  explicit CountingOracle(MooreMachine m, std::vector<std::string> refuse = {})
      : m_(std::move(m)), refuse_(std::move(refuse)) {}
  std::optional<Outcome> query(const Test& t) override {
    ++queries;
    if (std::find(refuse_.begin(), refuse_.end(), t.name) != refuse_.end()) return std::nullopt;
    return run_test(t, m_);
  }
  std::size_t queries = 0;

 private:
  MooreMachine m_;
  std::vector<std::string> refuse_;
};

class ThrowingOracle final : public TargetOracle {
 public:
  std::optional<Outcome> query(const Test&) override { throw std::runtime_error("link down"); }
};

CompositeSystem dropped_gps_hypothesis(const Wiring& refinement) {
  namespace sc = scenarios;
  const auto sensors = compose(sc::sensors_real_wiring(), refinement);
  const auto c = sc::boxes::control("C'");
  const auto d = sc::boxes::dynamics("D'");
  const auto top = sc::top_wiring(sc::boxes::sensors("L"), c, d);
  const auto view = sc::build_uav_attacker_view();
  return {"refined", normalize(compose(top, tensor({sensors, identity_wiring(c), identity_wiring(d)}))),
          view.components};
}

}  // namespace

TEST_CASE("run_test basics") {
  const auto d = delay();
  CHECK(run_test(terminal(), d).value == std::vector<std::string>{"*"});
  CHECK(run_test(terminal(), scenarios::machines::position_real()).value == std::vector<std::string>{"*"});
  CHECK(run_test(trace_set(0), d).value == std::vector<std::string>{"in=;out="});

  const auto t2 = run_test(trace_set(2), d);
  CHECK(t2.test == "traces2");
  CHECK(t2.value == std::vector<std::string>{"in=0,0;out=0,0", "in=0,1;out=0,0", "in=1,0;out=0,1",
                                             "in=1,1;out=0,1"});
  CHECK(run_test(state_set(), testing::delay2()).value.size() == 4);
  CHECK(run_test(output_image(0), d).value == std::vector<std::string>{"0"});
  CHECK(run_test(output_image(1), d).value == std::vector<std::string>{"0", "1"});
}

TEST_CASE("run_test is the same serial and parallel") {
  const auto m = composite(scenarios::build_uav_real());
  CHECK(run_test(trace_set(4), m, kernels::Exec::serial) == run_test(trace_set(4), m, kernels::Exec::parallel));
}

TEST_CASE("compare_outcomes") {
  const auto d = delay();
  const auto c = testing::constant(0, d.box());
  for (const auto& t : {trace_set(3), state_set(), terminal(), output_image(2)})
    CHECK(compare_outcomes(t, run_test(t, d), run_test(t, d)).agree);

  const auto three = MooreMachine::tabulate("x", d.box(), {"a", "b", "c"}, 0,
                                            [](std::size_t s, const Tuple&) { return (s + 1) % 3; },
                                            [](std::size_t) { return Tuple{0}; });
  const auto other = MooreMachine::tabulate("y", d.box(), {"p", "q", "r"}, 0,
                                            [](std::size_t, const Tuple&) { return std::size_t{0}; },
                                            [](std::size_t) { return Tuple{0}; });
  CHECK(compare_outcomes(state_set(), run_test(state_set(), three), run_test(state_set(), other)).agree);

  const auto t3 = trace_set(3);
  const auto cmp = compare_outcomes(t3, run_test(t3, d), run_test(t3, c));
  CHECK_FALSE(cmp.agree);
  REQUIRE(cmp.witness);
  CHECK(cmp.witness->starts_with("in=0,1,0"));

  CHECK_THROWS_AS(compare_outcomes(t3, run_test(state_set(), d), run_test(t3, d)), PreconditionError);
}

TEST_CASE("isomorphic machines agree on every test") {
  const auto real = composite(scenarios::build_uav_real());
  const auto rev = scenarios::reversed_states(real, "rev");
  MachineHom h{"rev", real, rev, {}};
  for (std::size_t s = 0; s < real.state_count(); ++s) h.state_map.push_back(real.state_count() - 1 - s);
  REQUIRE(is_isomorphism(h));
  for (const auto& t : {trace_set(5), state_set(), terminal(), output_image(3)}) {
    CAPTURE(t.name);
    CHECK(compare_outcomes(t, run_test(t, real), run_test(t, rev)).agree);
    CHECK(compare_outcomes(t, transport(t, h, run_test(t, real)), run_test(t, rev)).agree);
  }
  CHECK(transport(state_set(), h, run_test(state_set(), real)) == run_test(state_set(), rev));
}

TEST_CASE("transport along a non-injective hom") {
  const auto h = scenarios::homs::collapse();
  const auto out = transport(state_set(), h, run_test(state_set(), h.source));
  CHECK(out.value.size() == 2);
  CHECK(transport(terminal(), h, run_test(terminal(), h.source)).value == std::vector<std::string>{"*"});
  CHECK_THROWS_AS(transport(state_set(), h, Outcome{"states", {"nope"}}), PreconditionError);
}

TEST_CASE("yoneda_filter recovers the target exactly") {
  const auto kb = scenarios::uav_knowledge_base();
  const auto battery = full_battery(6);
  for (const auto& e : kb.entries) {
    CAPTURE(e.name);
    CountingOracle o(e.machine);
    const auto r = yoneda_filter(kb, battery, o);
    CHECK(o.queries == battery.size());
    CHECK(r.complete());
    CHECK(r.classification == Classification::exact);
    CHECK(r.candidates == std::vector<std::string>{e.name});
    CHECK(r.rows.size() == kb.entries.size());
    CHECK(r.tests == std::vector<std::string>{"traces6", "states"});
  }
}

TEST_CASE("yoneda_filter classifications") {
  const auto kb = scenarios::uav_knowledge_base();
  CountingOracle o(composite(scenarios::build_uav_real()));

  const auto empty = yoneda_filter(KnowledgeBase{kb.box, {}}, full_battery(), o);
  CHECK(empty.classification == Classification::unknown);
  CHECK(empty.candidates.empty());

  const auto term = yoneda_filter(kb, {terminal()}, o);
  CHECK(term.classification == Classification::ambiguous);
  CHECK(term.candidates.size() == kb.entries.size());

  // traces alone cannot tell the two IMU counts apart
  const auto traces = yoneda_filter(kb, {trace_set(6)}, o);
  CHECK(traces.classification == Classification::ambiguous);
  CHECK(traces.candidates == std::vector<std::string>{"uav-profile-a", "uav-one-imu"});

  CountingOracle stranger(scenarios::machines::constant_uav().renamed("other"));
  KnowledgeBase no_const{kb.box, {kb.entries.begin(), kb.entries.end() - 1}};
  CHECK(yoneda_filter(no_const, full_battery(), stranger).classification == Classification::unknown);
}

TEST_CASE("battery monotonicity and terminal neutrality") {
  const auto kb = scenarios::uav_knowledge_base();
  const std::vector<Test> tests{trace_set(2), trace_set(6), state_set(), output_image(1), output_image(3)};
  for (const auto& e : kb.entries) {
    CountingOracle o(e.machine);
    std::vector<Test> battery;
    auto prev = yoneda_filter(kb, battery, o).candidates;
    CHECK(prev.size() == kb.entries.size());
    for (const auto& t : tests) {
      battery.push_back(t);
      const auto now = yoneda_filter(kb, battery, o).candidates;
      for (const auto& n : now) CHECK(std::find(prev.begin(), prev.end(), n) != prev.end());
      CHECK(now.size() <= prev.size());
      auto with_term = battery;
      with_term.push_back(terminal());
      CHECK(yoneda_filter(kb, with_term, o).candidates == now);
      prev = now;
    }
  }
}

TEST_CASE("agreement on the full battery implies trace equivalence") {
  const auto kb = scenarios::uav_knowledge_base();
  for (const auto& a : kb.entries) {
    CountingOracle o(a.machine);
    for (const auto& name : yoneda_filter(kb, full_battery(6), o).candidates) {
      const auto it = std::find_if(kb.entries.begin(), kb.entries.end(), [&](const KbEntry& e) { return e.name == name; });
      CHECK(oracle::trace_equivalent(a.machine, it->machine, 6));
    }
  }
}

TEST_CASE("oracle failures give an incomplete matrix") {
  const auto kb = scenarios::uav_knowledge_base();
  CountingOracle partial(composite(scenarios::build_uav_real()), {"states"});
  const auto r = yoneda_filter(kb, full_battery(6), partial);
  CHECK_FALSE(r.complete());
  CHECK(r.unavailable_tests == std::vector<std::string>{"states"});
  for (const auto& row : r.matrix) CHECK(row[1] == Verdict::unavailable);
  CHECK(r.classification == Classification::ambiguous);

  ThrowingOracle broken;
  const auto all = yoneda_filter(kb, full_battery(6), broken);
  CHECK(all.unavailable_tests.size() == 2);
  CHECK(all.candidates.size() == kb.entries.size());
}

TEST_CASE("validate_kb rejects a foreign entry") {
  auto kb = scenarios::uav_knowledge_base();
  kb.entries.push_back({"delay", delay()});
  CHECK_THROWS_AS(validate_kb(kb), InvariantError);
}

TEST_CASE("architecture_probe") {
  const auto real = scenarios::build_uav_real();
  CountingOracle o(composite(real));
  const auto box = real.outer();
  std::vector<Hypothesis> hyps{{"one-imu", scenarios::build_uav_attacker_view()}, {"two-imu", real}};
  const auto both = architecture_probe(o, box, hyps, 6);
  CHECK(both.classification == Classification::ambiguous);
  CHECK(both.candidates == std::vector<std::string>{"one-imu", "two-imu"});

  const auto refined = architecture_probe(o, box, {{"refined", dropped_gps_hypothesis(scenarios::imu_refinement())}}, 6);
  CHECK(refined.classification == Classification::exact);

  const auto dropped =
      architecture_probe(o, box, {{"dropped", dropped_gps_hypothesis(scenarios::gps_dropping_refinement())}}, 6);
  CHECK(dropped.classification == Classification::unknown);
  REQUIRE(dropped.witness.size() == 1);
  CHECK(dropped.witness[0].has_value());

  CHECK(architecture_probe(o, box, {}, 6).classification == Classification::unknown);

  const auto d = delay();
  CHECK_THROWS_AS(architecture_probe(o, box, {{"delay", {"delay", identity_wiring(d.box()), {d}}}}, 6),
                  CompositionError);
}
