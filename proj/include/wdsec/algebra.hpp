#pragma once

// The Moore-machine algebra on wiring diagrams: a wiring Xs -> [Y] turns
// machines on Xs into one machine on Y, and machine morphisms on the
// components into a morphism of composites.

#include <string>
#include <vector>

#include "wdsec/architecture.hpp"
#include "wdsec/moore.hpp"
#include "wdsec/wiring.hpp"

namespace wdsec {

/// Composite over w.outer[0]. State set is the ordered product of the
/// component state sets (first component most significant), named "(s1,...,sn)".
/// One step: read every component, feed f_in(readouts, outer input) to the
/// components, readout is f_out(readouts).
MooreMachine apply_algebra(const Wiring& w, const std::vector<MooreMachine>& machines,
                           const std::string& name = "");

/// Lifts component homs along w: state map is the product of component maps.
/// The result is checked against both composites before it is returned.
MachineHom lift_hom(const Wiring& w, const std::vector<MachineHom>& homs);

/// A wired system: one machine per inner box of a single-outer wiring.
struct CompositeSystem {
  std::string name;
  Wiring wiring;
  std::vector<MooreMachine> components;

  const Box& outer() const { return wiring.outer.at(0); }
  /// Slot index by inner box name; npos if absent.
  std::size_t slot(const std::string& box_name) const;
  bool operator==(const CompositeSystem&) const = default;
};

/// Throws CompositionError when the components do not sit on the inner boxes.
void validate_system(const CompositeSystem& sys);
MooreMachine composite(const CompositeSystem& sys);

/// Machines on the leaves of an architecture, composed through its flattening.
CompositeSystem from_architecture(std::string name, const Architecture& arch,
                                  std::vector<MooreMachine> leaf_machines);

}  // namespace wdsec
