#pragma once

// Graphviz export. Inner boxes become clusters holding one node per port,
// outer ports are top-level nodes, every wire reference is one edge, and
// constants and lookup tables get nodes of their own. Output depends only
// on the input (document order throughout).

#include <string>

#include "wdsec/architecture.hpp"
#include "wdsec/wiring.hpp"

namespace wdsec {

std::string export_dot(const Wiring& w, const std::string& title = "");
/// Nested clusters, one per decomposed node, with each level's wiring drawn inside it.
std::string export_dot(const Architecture& a, const std::string& title = "");

}  // namespace wdsec
