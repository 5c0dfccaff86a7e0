#pragma once

#include <vector>

#include "wdsec/wiring.hpp"

namespace wdsec {

/// A hierarchical decomposition of a box. A node is either atomic or
/// decomposed by a wiring whose outer box is the node's box and whose inner
/// boxes are the boxes of `parts`, in order.
struct Architecture {
  Box box;
  std::optional<Wiring> wiring;
  std::vector<Architecture> parts;

  bool atomic() const { return !wiring.has_value(); }
  bool operator==(const Architecture&) const = default;
};

Architecture atomic(const Box& b);
Architecture decompose(const Wiring& w, std::vector<Architecture> parts);

/// Throws CompositionError / WiringError if a node's wiring does not match
/// its box and its parts.
void validate_architecture(const Architecture& a);

/// Atomic boxes, depth first, left to right.
std::vector<Box> leaves(const Architecture& a);

/// The single wiring leaves -> [box] obtained by composing every level.
Wiring flatten(const Architecture& a);

}  // namespace wdsec
