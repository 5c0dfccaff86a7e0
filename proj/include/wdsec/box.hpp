#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wdsec {

using Symbol = std::string;
using Alphabet = std::vector<Symbol>;

/// A tuple of symbol indices, one per port, each indexing that port's alphabet.
using Tuple = std::vector<std::size_t>;
/// A sequence of tuples (one per time step).
using Word = std::vector<Tuple>;

struct Port {
  std::string name;
  Alphabet alphabet;

  bool operator==(const Port&) const = default;
};

using Ports = std::vector<Port>;

/// Number of tuples over the ports (product of alphabet sizes; 1 for no ports).
std::size_t tuple_count(std::span<const Port> ports);
/// Mixed-radix code of a tuple, first port most significant. Throws AlphabetError.
std::size_t encode(std::span<const Port> ports, const Tuple& t);
Tuple decode(std::span<const Port> ports, std::size_t code);
/// Throws AlphabetError unless `t` has one in-range index per port.
void check_tuple(std::span<const Port> ports, const Tuple& t);

/// Symbol names to indices. Throws AlphabetError naming the offending port.
Tuple parse_tuple(std::span<const Port> ports, const std::vector<Symbol>& symbols);
std::vector<Symbol> symbols_of(std::span<const Port> ports, const Tuple& t);
/// "0|1|0" form used on the command line and in outcome encodings.
std::string render_tuple(std::span<const Port> ports, const Tuple& t);
Tuple parse_tuple_text(std::span<const Port> ports, std::string_view text);
/// "0|1,1|0" form: tuples separated by ',', ports by '|'.
std::string render_word(std::span<const Port> ports, const Word& w);
Word parse_word(std::span<const Port> ports, std::string_view text);

std::size_t port_index(std::span<const Port> ports, std::string_view name);  // npos if absent
inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

/// An interface of the wiring-diagram category: named input and output ports.
struct Box {
  std::string name;
  Ports in;
  Ports out;

  std::size_t in_count() const { return tuple_count(in); }
  std::size_t out_count() const { return tuple_count(out); }

  bool operator==(const Box&) const = default;
};

/// Same ports (names and alphabets) on both sides; the box name is a label only.
bool same_interface(const Box& a, const Box& b);
std::string describe(const Box& b);  // "G'(g1,g2 -> g)"

/// Throws InvariantError on duplicate port names or empty alphabets.
void validate_box(const Box& b);

Port binary_port(std::string name);
Box binary_box(std::string name, const std::vector<std::string>& ins,
               const std::vector<std::string>& outs);

/// FNV-1a, used for stable fingerprints in provenance logs.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace wdsec
