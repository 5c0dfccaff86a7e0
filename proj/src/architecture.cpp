#include "wdsec/architecture.hpp"

namespace wdsec {

Architecture atomic(const Box& b) { return Architecture{b, std::nullopt, {}}; }

Architecture decompose(const Wiring& w, std::vector<Architecture> parts) {
  if (w.outer.size() != 1) throw CompositionError("a decomposition wiring has exactly one outer box");
  Architecture a{w.outer[0], w, std::move(parts)};
  validate_architecture(a);
  return a;
}

void validate_architecture(const Architecture& a) {
  if (a.atomic()) {
    if (!a.parts.empty()) throw CompositionError("atomic box '" + a.box.name + "' has parts");
    return;
  }
  const auto& w = *a.wiring;
  validate_wiring(w);
  if (w.outer.size() != 1 || !same_interface(w.outer[0], a.box))
    throw CompositionError("wiring of '" + a.box.name + "' does not land in that box");
  if (w.inner.size() != a.parts.size())
    throw CompositionError("wiring of '" + a.box.name + "' has " + std::to_string(w.inner.size()) +
                           " inner boxes but " + std::to_string(a.parts.size()) + " parts");
  for (std::size_t i = 0; i < a.parts.size(); ++i) {
    if (!same_interface(w.inner[i], a.parts[i].box))
      throw CompositionError("inner box " + std::to_string(i) + " of '" + a.box.name +
                             "' does not match part '" + a.parts[i].box.name + "'");
    validate_architecture(a.parts[i]);
  }
}

std::vector<Box> leaves(const Architecture& a) {
  if (a.atomic()) return {a.box};
  std::vector<Box> out;
  for (const auto& p : a.parts) {
    auto sub = leaves(p);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

Wiring flatten(const Architecture& a) {
  if (a.atomic()) return identity_wiring(a.box);
  std::vector<Wiring> below;
  for (const auto& p : a.parts) below.push_back(flatten(p));
  return compose(*a.wiring, tensor(below));
}

}  // namespace wdsec
