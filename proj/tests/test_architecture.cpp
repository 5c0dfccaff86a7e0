#include <doctest.h>

#include "support.hpp"

using namespace wdsec;

TEST_CASE("the real architecture has six leaves in document order") {
  const auto a = scenarios::uav_real_architecture();
  CHECK_NOTHROW(validate_architecture(a));
  std::vector<std::string> names;
  for (const auto& b : leaves(a)) names.push_back(b.name);
  CHECK(names == std::vector<std::string>{"IMU1", "IMU2", "G", "P", "C", "D"});
  CHECK(leaves(scenarios::uav_view_architecture()).size() == 5);
}

TEST_CASE("flattening composes every level") {
  const auto a = scenarios::uav_real_architecture();
  const auto w = flatten(a);
  CHECK(w.outer.size() == 1);
  CHECK(w.outer[0].name == "UAV");
  CHECK(w.inner == leaves(a));
  CHECK(w == scenarios::build_uav_real().wiring);
}

TEST_CASE("atomic architectures flatten to identities") {
  const auto x = binary_box("X", {"a"}, {"b"});
  const auto a = atomic(x);
  CHECK(a.atomic());
  CHECK(flatten(a) == identity_wiring(x));
  CHECK(leaves(a) == std::vector<Box>{x});
}

TEST_CASE("a node must match its wiring") {
  const auto w = scenarios::sensors_view_wiring();
  CHECK_THROWS(decompose(w, {atomic(w.inner[0])}));
  auto parts = std::vector<Architecture>{atomic(w.inner[0]), atomic(w.inner[2]), atomic(w.inner[1])};
  Architecture bad{w.outer[0], w, parts};
  CHECK_THROWS_AS(validate_architecture(bad), Error);
}
