#pragma once

// Morphisms of the wiring-diagram category. A wiring goes from a list of
// inner boxes to a list of outer boxes (the tensor is strict: lists
// concatenate). It feeds every inner input from inner outputs or outer
// inputs, and every outer output from inner outputs only.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wdsec/box.hpp"
#include "wdsec/error.hpp"
#include "wdsec/kernels.hpp"

namespace wdsec {

enum class Side { outer_in, inner_out };

/// A wire end: an outer input port or an inner output port.
struct PortRef {
  Side side = Side::inner_out;
  std::size_t box = 0;
  std::size_t port = 0;

  auto operator<=>(const PortRef&) const = default;
};

/// A constant, as an index into the target port's alphabet.
struct Const {
  std::size_t symbol = 0;

  bool operator==(const Const&) const = default;
};

/// An arbitrary finite function of some wire ends. `values` is indexed by the
/// mixed-radix code of the referenced symbols (first ref most significant) and
/// holds indices into the target port's alphabet.
struct Table {
  std::vector<PortRef> refs;
  std::vector<std::size_t> values;

  bool operator==(const Table&) const = default;
};

using SourceExpr = std::variant<PortRef, Const, Table>;

inline PortRef outer_in(std::size_t box, std::size_t port) { return {Side::outer_in, box, port}; }
inline PortRef inner_out(std::size_t box, std::size_t port) { return {Side::inner_out, box, port}; }

using BoxValues = std::vector<Tuple>;  // one tuple per box

struct Wiring {
  std::vector<Box> inner;
  std::vector<Box> outer;
  std::vector<std::vector<SourceExpr>> in_map;   // [inner box][input port]
  std::vector<std::vector<SourceExpr>> out_map;  // [outer box][output port]

  bool operator==(const Wiring&) const = default;
};

class WiringError : public Error {
 public:
  using Error::Error;
};

/// Throws WiringError naming the first offending assignment.
void validate_wiring(const Wiring& w);

/// Alphabet of the port a reference reads from.
const Alphabet& ref_alphabet(const Wiring& w, const PortRef& r);

Wiring identity_wiring(const Box& x);
Wiring identity_wiring(const std::vector<Box>& xs);

/// g o f. Requires f.outer and g.inner to have the same length and the same
/// interfaces; throws CompositionError naming the first mismatching port.
Wiring compose(const Wiring& g, const Wiring& f);
/// Composes right to left: compose_chain({h, g, f}) = h o g o f.
Wiring compose_chain(const std::vector<Wiring>& chain);

/// Parallel placement; boxes and wires concatenate, no cross wiring.
Wiring tensor(const std::vector<Wiring>& ws);

struct EvalResult {
  BoxValues inner_in;
  BoxValues outer_out;

  bool operator==(const EvalResult&) const = default;
};

/// (f_in(inner_out, outer_in), f_out(inner_out)). Throws AlphabetError on
/// ill-typed tuples.
EvalResult eval(const Wiring& w, const BoxValues& inner_out, const BoxValues& outer_in);
/// Outer outputs only (f_out reads inner outputs only).
BoxValues eval_out(const Wiring& w, const BoxValues& inner_out);

/// Value of a single source expression.
std::size_t eval_expr(const Wiring& w, const SourceExpr& e, const BoxValues& inner_out,
                      const BoxValues& outer_in);

/// Simplifies Tables: drops references the output does not depend on, merges
/// repeated references, turns constant tables into Const and identity tables
/// into plain references.
Wiring normalize(const Wiring& w);

struct EvalWitness {
  BoxValues inner_out;
  BoxValues outer_in;
};

/// Every (inner_out, outer_in) combination in code order.
std::size_t eval_domain_size(const Wiring& w);
void eval_domain_at(const Wiring& w, std::size_t index, BoxValues& inner_out, BoxValues& outer_in);

/// Exhaustive eval comparison of two wirings with the same boundaries.
/// Returns the first input (in code order) on which they differ.
std::optional<EvalWitness> eval_difference(const Wiring& a, const Wiring& b,
                                           kernels::Exec exec = kernels::Exec::parallel);
inline bool eval_equal(const Wiring& a, const Wiring& b, kernels::Exec exec = kernels::Exec::parallel) {
  return !eval_difference(a, b, exec);
}

/// Same inner and outer interfaces, box by box.
bool same_boundary(const Wiring& a, const Wiring& b);

struct ArchCheck {
  bool commutes = false;
  std::optional<EvalWitness> witness;
};

/// Morphism check in the slice category over an outer box: phi: Xs -> X,
/// psi: Ys -> X, k: Xs -> Ys; true iff psi o k evaluates like phi everywhere.
ArchCheck check_arch_morphism(const Wiring& phi, const Wiring& psi, const Wiring& k);

/// Box i of an n-box endo-slot rewired: id ... endo ... id.
Wiring place_endo(const std::vector<Box>& boxes, std::size_t index, const Wiring& endo);

/// Replaces box labels (interfaces must match).
Wiring relabel(const Wiring& w, const std::vector<Box>& inner, const std::vector<Box>& outer);

std::uint64_t fingerprint(const Wiring& w);

}  // namespace wdsec
