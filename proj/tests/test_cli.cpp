#include <doctest.h>

#include <sstream>

#include "support.hpp"
#include "wdsec/cli.hpp"

using namespace wdsec;
using testing::fixture_path;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run wdsec_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fx(const std::string& rel) { return fixture_path(rel).string(); }

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("usage errors") {
  CHECK(wdsec_cli({}).code == cli::kExitUsage);
  CHECK(wdsec_cli({"bogus"}).code == cli::kExitUsage);
  CHECK(wdsec_cli({"simulate", fx("uav/system.json")}).code == cli::kExitUsage);
  CHECK(wdsec_cli({"check-laws", "--count", "many"}).code == cli::kExitUsage);
  CHECK(wdsec_cli({"--help"}).code == cli::kExitOk);
}

TEST_CASE("validate") {
  const auto ok = wdsec_cli({"validate", fx("uav/system.json")});
  CHECK(ok.code == cli::kExitOk);
  CHECK(wdsec_cli({"validate", fx("fincat/z2.json")}).code == cli::kExitOk);
  CHECK(wdsec_cli({"validate", fx("uav/scenario.json")}).code == cli::kExitOk);
  for (const auto* bad : {"invalid/missing-composite.json", "invalid/unknown-port.json", "invalid/partial-table.json"}) {
    CAPTURE(bad);
    const auto r = wdsec_cli({"validate", fx(bad)});
    CHECK(r.code == cli::kExitDomain);
    CHECK_FALSE(r.err.empty());
  }
  const auto port = wdsec_cli({"validate", fx("invalid/unknown-port.json")});
  CHECK(has(port.err, "wirings[0].in_map[0].src.port"));
  CHECK(wdsec_cli({"validate", fx("nope.json")}).code == cli::kExitDomain);
}

TEST_CASE("compose and simulate") {
  const auto c = wdsec_cli({"compose", fx("uav/system.json")});
  CHECK(c.code == cli::kExitOk);
  const auto m = io::parse_machine(io::Json::parse(c.out));
  CHECK(same_tables(m, composite(scenarios::build_uav_real())));

  const auto s = wdsec_cli({"simulate", fx("uav/system.json"), "--input", "1|0,0|1,1|1"});
  CHECK(s.code == cli::kExitOk);
  CHECK(has(s.out, "output: 0,0,1"));
  CHECK(wdsec_cli({"simulate", fx("uav/system.json"), "--input", "2|0"}).code == cli::kExitDomain);
  const auto steps = wdsec_cli({"simulate", fx("uav/targets/uav-real.json"), "--input", "1|1", "--steps", "3"});
  CHECK(steps.code == cli::kExitOk);
}

TEST_CASE("learn exit codes follow the classification") {
  const auto exact = wdsec_cli({"learn", "--target", fx("uav/targets/uav-real.json"), "--kb", fx("uav/kb"),
                                "--battery", fx("uav/battery.json")});
  CHECK(exact.code == cli::kExitOk);
  CHECK(has(exact.out, "classification: Exact"));
  CHECK(has(exact.out, "candidates: uav-profile-a"));

  const auto amb = wdsec_cli({"learn", "--target", fx("uav/targets/uav-real.json"), "--kb", fx("uav/kb"),
                              "--battery", fx("uav/battery-terminal.json")});
  CHECK(amb.code == cli::kExitAmbiguous);
  CHECK(has(amb.out, "classification: Ambiguous"));

  const auto field = wdsec_cli({"learn", "--target", fx("uav/system.json"), "--system", "Field", "--kb",
                                fx("uav/kb"), "--battery", fx("uav/battery.json")});
  CHECK(field.code == cli::kExitDomain);
}

TEST_CASE("attack") {
  const auto swap = wdsec_cli({"attack", "--scenario", fx("uav/scenario.json"), "--script", "swap"});
  CHECK(swap.code == cli::kExitOk);
  CHECK(has(swap.out, "equivalent: no"));
  CHECK(has(swap.out, "trace-equivalent to depth 6: yes"));

  const auto twice = wdsec_cli({"attack", "--scenario", fx("uav/scenario.json"), "--script", "double-swap"});
  CHECK(twice.code == cli::kExitOk);
  CHECK(has(twice.out, "equivalent: yes"));

  CHECK(wdsec_cli({"attack", "--scenario", fx("uav/scenario.json"), "--script", "nope"}).code == cli::kExitDomain);

  std::filesystem::create_directories(WDSEC_TMP_DIR);
  const auto emitted = (std::filesystem::path(WDSEC_TMP_DIR) / "combined-out.json").string();
  const auto comb = wdsec_cli({"attack", "--scenario", fx("uav/scenario.json"), "--script", "combined", "--emit", emitted});
  CHECK(comb.code == cli::kExitOk);
  CHECK(has(comb.out, "equivalent: no"));
  CHECK(wdsec_cli({"validate", emitted}).code == cli::kExitOk);
}

TEST_CASE("diff") {
  CHECK(wdsec_cli({"diff", "--a", fx("uav/targets/uav-real.json"), "--b", fx("uav/targets/uav-view.json")}).code ==
        cli::kExitOk);
  const auto d = wdsec_cli({"diff", "--a", fx("uav/targets/uav-real.json"), "--b", fx("uav/kb/4-uav-hacked-gps.json")});
  CHECK(d.code == cli::kExitDiffers);
  CHECK(has(d.out, "witness: "));
  CHECK(wdsec_cli({"diff", "--a", fx("uav/system.json"), "--system-a", "UAV", "--b", fx("uav/system.json"),
                   "--system-b", "Field"})
            .code == cli::kExitDomain);
}

TEST_CASE("export-dot") {
  const auto id = wdsec_cli({"export-dot", fx("uav/system.json")});
  CHECK(id.code == cli::kExitOk);
  CHECK(id.out.starts_with("digraph"));
  const auto w = wdsec_cli({"export-dot", fx("uav/system.json"), "--wiring", "gps-swap"});
  CHECK(w.code == cli::kExitOk);
  CHECK(has(w.out, "digraph \"gps-swap\""));
  CHECK(wdsec_cli({"export-dot", fx("uav/system.json"), "--wiring", "nope"}).code == cli::kExitDomain);
}

TEST_CASE("category commands") {
  const auto y = wdsec_cli({"yoneda-check", fx("fincat/arrow.json"), "--object", "0", "--functor", "collapse"});
  CHECK(y.code == cli::kExitOk);
  CHECK(has(y.out, "bijection: confirmed"));
  CHECK(wdsec_cli({"yoneda-check", fx("fincat/arrow.json"), "--object", "9", "--functor", "collapse"}).code ==
        cli::kExitDomain);

  const auto iso = wdsec_cli({"iso-check", fx("fincat/iso-pair.json"), "--a", "A", "--b", "B"});
  CHECK(iso.code == cli::kExitOk);
  CHECK(has(iso.out, "yes"));
  CHECK(wdsec_cli({"iso-check", fx("fincat/arrow.json"), "--a", "0", "--b", "1"}).code == cli::kExitDiffers);
}

TEST_CASE("check-laws") {
  const auto r = wdsec_cli({"check-laws", "--seed", "3", "--count", "10", "--depth", "4"});
  CHECK(r.code == cli::kExitOk);
  CHECK(has(r.out, "networks: 10 (seed 3, depth 4)"));
}
