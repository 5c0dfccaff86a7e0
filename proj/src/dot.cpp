#include "wdsec/dot.hpp"

#include <functional>
#include <sstream>

namespace wdsec {
namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string port_id(const std::string& prefix, const char* side, const std::string& port) {
  return quote(prefix + ":" + side + ":" + port);
}

using PortIds = std::function<std::string(std::size_t box, const char* side, const std::string& port)>;

class Emitter {
 public:
  explicit Emitter(std::ostringstream& os) : os_(os) {}

  void ports(const Box& b, const std::string& prefix, const std::string& indent) {
    for (const auto& p : b.in)
      os_ << indent << port_id(prefix, "in", p.name) << " [label=" << quote(p.name) << ", shape=circle];\n";
    for (const auto& p : b.out)
      os_ << indent << port_id(prefix, "out", p.name) << " [label=" << quote(p.name)
          << ", shape=doublecircle];\n";
  }

  /// Edges of one wiring level; `inner_id` and `outer_id` name port nodes.
  void edges(const Wiring& w, const PortIds& inner_id, const PortIds& outer_id, const std::string& indent) {
    auto ref = [&](const PortRef& r) {
      return r.side == Side::inner_out ? inner_id(r.box, "out", w.inner[r.box].out[r.port].name)
                                       : outer_id(r.box, "in", w.outer[r.box].in[r.port].name);
    };
    auto feed = [&](const SourceExpr& e, const Alphabet& target, const std::string& to) {
      if (const auto* r = std::get_if<PortRef>(&e)) {
        os_ << indent << ref(*r) << " -> " << to << ";\n";
      } else if (const auto* k = std::get_if<Const>(&e)) {
        const auto id = quote("const" + std::to_string(consts_++));
        os_ << indent << id << " [label=" << quote(target.at(k->symbol)) << ", shape=plaintext];\n";
        os_ << indent << id << " -> " << to << ";\n";
      } else {
        const auto& t = std::get<Table>(e);
        const auto id = quote("table" + std::to_string(tables_++));
        os_ << indent << id << " [label=\"table\", shape=diamond];\n";
        for (const auto& r : t.refs) os_ << indent << ref(r) << " -> " << id << ";\n";
        os_ << indent << id << " -> " << to << ";\n";
      }
    };
    for (std::size_t b = 0; b < w.inner.size(); ++b)
      for (std::size_t p = 0; p < w.inner[b].in.size(); ++p)
        feed(w.in_map[b][p], w.inner[b].in[p].alphabet, inner_id(b, "in", w.inner[b].in[p].name));
    for (std::size_t b = 0; b < w.outer.size(); ++b)
      for (std::size_t p = 0; p < w.outer[b].out.size(); ++p)
        feed(w.out_map[b][p], w.outer[b].out[p].alphabet, outer_id(b, "out", w.outer[b].out[p].name));
  }

  void open_cluster(const std::string& id, const std::string& label, const std::string& indent) {
    os_ << indent << "subgraph " << quote("cluster_" + id) << " {\n";
    os_ << indent << "  label=" << quote(label) << ";\n";
  }

 private:
  std::ostringstream& os_;
  std::size_t consts_ = 0;
  std::size_t tables_ = 0;
};

void header(std::ostringstream& os, const std::string& title) {
  os << "digraph " << quote(title) << " {\n";
  os << "  rankdir=LR;\n";
  os << "  label=" << quote(title) << ";\n";
  os << "  node [fontsize=10];\n";
}

std::string outer_title(const std::vector<Box>& outer) {
  std::string t;
  for (std::size_t i = 0; i < outer.size(); ++i) t += (i ? " ⊗ " : "") + outer[i].name;
  return t;
}

}  // namespace

std::string export_dot(const Wiring& w, const std::string& title) {
  std::ostringstream os;
  Emitter em(os);
  header(os, title.empty() ? outer_title(w.outer) : title);
  auto outer_prefix = [](std::size_t b) { return "outer" + std::to_string(b); };
  auto inner_prefix = [](std::size_t b) { return "inner" + std::to_string(b); };
  for (std::size_t b = 0; b < w.outer.size(); ++b) em.ports(w.outer[b], outer_prefix(b), "  ");
  for (std::size_t b = 0; b < w.inner.size(); ++b) {
    em.open_cluster(inner_prefix(b), w.inner[b].name, "  ");
    em.ports(w.inner[b], inner_prefix(b), "    ");
    os << "  }\n";
  }
  em.edges(
      w, [&](std::size_t b, const char* side, const std::string& p) { return port_id(inner_prefix(b), side, p); },
      [&](std::size_t b, const char* side, const std::string& p) { return port_id(outer_prefix(b), side, p); },
      "  ");
  os << "}\n";
  return os.str();
}

std::string export_dot(const Architecture& a, const std::string& title) {
  validate_architecture(a);
  std::ostringstream os;
  Emitter em(os);
  header(os, title.empty() ? a.box.name : title);
  em.ports(a.box, "n", "  ");

  std::function<void(const Architecture&, const std::string&, const std::string&)> level =
      [&](const Architecture& node, const std::string& id, const std::string& indent) {
        if (node.atomic()) return;
        for (std::size_t i = 0; i < node.parts.size(); ++i) {
          const auto child = id + "." + std::to_string(i);
          em.open_cluster(child, node.parts[i].box.name, indent);
          em.ports(node.parts[i].box, child, indent + "  ");
          level(node.parts[i], child, indent + "  ");
          os << indent << "}\n";
        }
        em.edges(
            *node.wiring,
            [&](std::size_t b, const char* side, const std::string& p) {
              return port_id(id + "." + std::to_string(b), side, p);
            },
            [&](std::size_t, const char* side, const std::string& p) { return port_id(id, side, p); }, indent);
      };
  level(a, "n", "  ");
  os << "}\n";
  return os.str();
}

}  // namespace wdsec
