#pragma once

// Seeded random wired networks over binary alphabets, for law checking.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "wdsec/algebra.hpp"

namespace wdsec::random {

struct Options {
  std::size_t max_boxes = 3;
  std::size_t max_states = 3;
  std::size_t max_ports = 2;
  std::size_t word_length = 6;
};

Box random_box(std::mt19937_64& rng, const std::string& name, const Options& opt);
MooreMachine random_machine(std::mt19937_64& rng, const Box& box, const std::string& name,
                            const Options& opt);
/// Every input fed by a random reference, constant or two-reference table.
Wiring random_wiring(std::mt19937_64& rng, const std::vector<Box>& inner, const std::vector<Box>& outer);

/// machines on inner boxes --f--> middle --g--> outer, plus an input word for g's outer box.
struct Network {
  std::vector<MooreMachine> machines;
  Wiring f;
  Wiring g;
  Word word;
};

Network random_network(std::mt19937_64& rng, const Options& opt = {});
/// `count` networks from one seed; the same seed gives the same list.
std::vector<Network> random_networks(std::uint64_t seed, std::size_t count, const Options& opt = {});

struct LawReport {
  std::size_t networks = 0;
  std::size_t identity_failures = 0;
  std::size_t composition_failures = 0;
  std::size_t oracle_failures = 0;
  std::vector<std::string> messages;

  bool ok() const { return identity_failures + composition_failures + oracle_failures == 0; }
};

/// Identity law: F(id)(m) is state-bijective and trace-equal to m, and
/// F(f o id) is trace-equal to F(f). Composition law: F(g o f)(ms) is
/// trace-equal to F(g)(F(f)(ms)). Oracle: the stagewise simulation of g o f
/// matches the composite on the network's word.
LawReport check_laws(std::uint64_t seed, std::size_t count, std::size_t depth, const Options& opt = {});

}  // namespace wdsec::random
