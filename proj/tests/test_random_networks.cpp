#include <doctest.h>

#include "support.hpp"
#include "wdsec/random_networks.hpp"

using namespace wdsec;

TEST_CASE("same seed, same networks") {
  const auto a = random::random_networks(5, 20);
  const auto b = random::random_networks(5, 20);
  REQUIRE(a.size() == 20);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].machines == b[i].machines);
    CHECK(a[i].f == b[i].f);
    CHECK(a[i].g == b[i].g);
    CHECK(a[i].word == b[i].word);
  }
  const auto c = random::random_networks(6, 20);
  bool any_diff = false;
  for (std::size_t i = 0; i < a.size(); ++i) any_diff |= !(a[i].machines == c[i].machines);
  CHECK(any_diff);
}

TEST_CASE("random networks respect the bounds") {
  random::Options opt;
  for (const auto& n : random::random_networks(1, 50, opt)) {
    CHECK(n.machines.size() >= 1);
    CHECK(n.machines.size() <= opt.max_boxes);
    CHECK_NOTHROW(validate_wiring(n.f));
    CHECK_NOTHROW(validate_wiring(n.g));
    CHECK(n.word.size() == opt.word_length);
    for (std::size_t i = 0; i < n.machines.size(); ++i) {
      CHECK(n.machines[i].state_count() <= opt.max_states);
      CHECK(same_interface(n.machines[i].box(), n.f.inner[i]));
    }
    const auto composed = compose(n.g, n.f);
    CHECK(run(apply_algebra(composed, n.machines), n.word) ==
          oracle::stagewise_simulate(composed, n.machines, n.word));
  }
}

TEST_CASE("laws hold on random networks") {
  const auto r = random::check_laws(0, 40, 5);
  CHECK(r.networks == 40);
  CHECK(r.ok());
  CHECK(r.messages.empty());
}
