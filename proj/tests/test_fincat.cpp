#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <set>

#include "wdsec/io.hpp"

namespace fs = std::filesystem;
using namespace wdsec;
using namespace wdsec::fincat;
using io::FinCatDoc;

namespace {

FinCatDoc fixture(const std::string& name) { return io::load_fincat(fs::path(WDSEC_FIXTURE_DIR) / "fincat" / (name + ".json")); }

std::vector<FinCatDoc> all_fixtures() {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(fs::path(WDSEC_FIXTURE_DIR) / "fincat")) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<FinCatDoc> out;
  for (const auto& f : files) out.push_back(io::load_fincat(f));
  return out;
}

}  // namespace

TEST_CASE("every shipped category and functor validates") {
  const auto docs = all_fixtures();
  CHECK(docs.size() >= 5);
  for (const auto& d : docs) {
    CAPTURE(d.category.name);
    CHECK(validate_category(d.category).ok());
    CHECK(d.functors.size() >= 3);
    for (const auto& f : d.functors) {
      CAPTURE(f.name);
      CHECK(validate_functor(d.category, f).ok());
    }
  }
}

TEST_CASE("a missing composite is a structural error") {
  const auto d = io::load_fincat(fs::path(WDSEC_FIXTURE_DIR) / "invalid" / "missing-composite.json");
  const auto r = validate_category(d.category);
  CHECK_FALSE(r.ok());
  CHECK(r.count("structure") == 1);
  CHECK(r.items[0].message == "missing composite g o f");
}

TEST_CASE("law violations are reported by kind") {
  // a o z = a breaks (a o z) o a = a o (z o a)
  auto c = fixture("nilpotent-monoid").category;
  for (auto& e : c.composition)
    if (e.g == "a" && e.f == "z") e.result = "a";
  const auto r = validate_category(c);
  CHECK_FALSE(r.ok());
  CHECK(r.count("associativity") > 0);
  CHECK(r.count("structure") == 0);

  auto d = fixture("arrow").category;
  for (auto& e : d.composition)
    if (e.g == "id_1" && e.f == "f") e.result = "f";
  CHECK(validate_category(d).ok());
  d.identity["0"] = "f";
  CHECK_FALSE(validate_category(d).ok());
}

TEST_CASE("functor validation catches broken functoriality") {
  const auto d = fixture("z2");
  auto f = d.functor("flip");
  CHECK(validate_functor(d.category, f).ok());
  f.morphism_map["g"]["a"] = "a";
  CHECK_FALSE(validate_functor(d.category, f).ok());
  auto g = d.functor("flip");
  g.morphism_map["g"]["a"] = "q";
  CHECK_FALSE(validate_functor(d.category, g).ok());
}

TEST_CASE("representable functors list hom sets") {
  const auto d = fixture("chain3");
  const auto h = hom_functor(d.category, "0");
  CHECK(h.object_map.at("0") == std::vector<std::string>{"id_0"});
  CHECK(h.object_map.at("2") == std::vector<std::string>{"gf"});
  CHECK(h.morphism_map.at("g").at("f") == "gf");
  CHECK(validate_functor(d.category, h).ok());
  CHECK_THROWS_AS(hom_functor(d.category, "9"), PreconditionError);
}

TEST_CASE("Yoneda bijection on every fixture object and functor") {
  for (const auto& d : all_fixtures())
    for (const auto& f : d.functors)
      for (const auto& a : d.category.objects) {
        CAPTURE(d.category.name);
        CAPTURE(f.name);
        CAPTURE(a);
        const auto w = yoneda_check(d.category, a, f);
        CHECK(w.nat_count == f.object_map.at(a).size());
        CHECK(w.element_count == w.nat_count);
        std::set<std::string> images;
        for (const auto& p : w.pairs) images.insert(p.second);
        CHECK(images.size() == w.nat_count);
      }
}

TEST_CASE("the Z/2 fixture: two transformations into the regular action") {
  const auto d = fixture("z2");
  const auto w = yoneda_check(d.category, "*", d.functor("regular"));
  CHECK(w.nat_count == 2);
  REQUIRE(w.pairs.size() == 2);
  CHECK(std::set<std::string>{w.pairs[0].second, w.pairs[1].second} == std::set<std::string>{"e", "g"});
}

TEST_CASE("natural transformations: enumeration and the naturality check") {
  const auto d = fixture("arrow");
  const auto h0 = hom_functor(d.category, "0");
  const auto& f = d.functor("collapse");
  const auto nats = enumerate_nat(d.category, h0, f);
  CHECK(nats.size() == 2);
  for (const auto& eta : nats) CHECK(is_natural(d.category, h0, f, eta));
  const auto& inc = d.functor("inclusion");
  const auto one = enumerate_nat(d.category, h0, inc);
  REQUIRE(one.size() == 1);
  auto bad = one[0];
  CHECK(bad.components.at("1").at("f") == "a");
  bad.components["1"]["f"] = "b";
  CHECK_FALSE(is_natural(d.category, h0, inc, bad));
}

TEST_CASE("serial and parallel enumeration agree") {
  for (const auto& d : all_fixtures())
    for (const auto& f : d.functors)
      for (const auto& g : d.functors) {
        const auto s = enumerate_nat(d.category, f, g, kernels::Exec::serial);
        const auto p = enumerate_nat(d.category, f, g, kernels::Exec::parallel);
        CHECK(s == p);
      }
}

TEST_CASE("representable isomorphism detects isomorphic objects only") {
  const auto iso = representable_iso_check(fixture("iso-pair").category, "A", "B");
  CHECK(iso.isomorphic);
  REQUIRE(iso.witness);
  CHECK(iso.witness->forward == "u");
  CHECK(iso.witness->backward == "v");
  const auto arrow = representable_iso_check(fixture("arrow").category, "0", "1");
  CHECK_FALSE(arrow.isomorphic);
  CHECK_FALSE(arrow.witness);
  const auto pair = representable_iso_check(fixture("parallel-pair").category, "A", "B");
  CHECK_FALSE(pair.isomorphic);
  CHECK(representable_iso_check(fixture("square").category, "D", "D").isomorphic);
}

TEST_CASE("yoneda_check refuses an invalid functor") {
  const auto d = fixture("z2");
  auto f = d.functor("flip");
  f.morphism_map["g"]["a"] = "a";
  CHECK_THROWS_AS(yoneda_check(d.category, "*", f), Error);
}
