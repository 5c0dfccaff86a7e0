#include "wdsec/box.hpp"

#include <set>
#include <sstream>

#include "wdsec/error.hpp"

namespace wdsec {

std::string Report::to_string() const {
  std::ostringstream os;
  for (const auto& d : items) {
    os << (d.severity == Severity::error ? "error" : "warning") << " [" << d.category
       << "] " << d.message << '\n';
  }
  return os.str();
}

std::size_t tuple_count(std::span<const Port> ports) {
  std::size_t n = 1;
  for (const auto& p : ports) n *= p.alphabet.size();
  return n;
}

void check_tuple(std::span<const Port> ports, const Tuple& t) {
  if (t.size() != ports.size()) {
    throw AlphabetError("tuple has " + std::to_string(t.size()) + " symbols, expected " +
                        std::to_string(ports.size()));
  }
  for (std::size_t i = 0; i < ports.size(); ++i) {
    if (t[i] >= ports[i].alphabet.size()) {
      throw AlphabetError("symbol index " + std::to_string(t[i]) + " outside alphabet of port '" +
                          ports[i].name + "' (size " +
                          std::to_string(ports[i].alphabet.size()) + ")");
    }
  }
}

std::size_t encode(std::span<const Port> ports, const Tuple& t) {
  check_tuple(ports, t);
  std::size_t code = 0;
  for (std::size_t i = 0; i < ports.size(); ++i) code = code * ports[i].alphabet.size() + t[i];
  return code;
}

Tuple decode(std::span<const Port> ports, std::size_t code) {
  Tuple t(ports.size());
  for (std::size_t i = ports.size(); i-- > 0;) {
    const auto radix = ports[i].alphabet.size();
    t[i] = code % radix;
    code /= radix;
  }
  return t;
}

Tuple parse_tuple(std::span<const Port> ports, const std::vector<Symbol>& symbols) {
  if (symbols.size() != ports.size()) {
    throw AlphabetError("tuple has " + std::to_string(symbols.size()) + " symbols, expected " +
                        std::to_string(ports.size()));
  }
  Tuple t(ports.size());
  for (std::size_t i = 0; i < ports.size(); ++i) {
    const auto& a = ports[i].alphabet;
    std::size_t k = 0;
    while (k < a.size() && a[k] != symbols[i]) ++k;
    if (k == a.size()) {
      throw AlphabetError("symbol '" + symbols[i] + "' outside alphabet of port '" +
                          ports[i].name + "'");
    }
    t[i] = k;
  }
  return t;
}

std::vector<Symbol> symbols_of(std::span<const Port> ports, const Tuple& t) {
  check_tuple(ports, t);
  std::vector<Symbol> out;
  out.reserve(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out.push_back(ports[i].alphabet[t[i]]);
  return out;
}

std::string render_tuple(std::span<const Port> ports, const Tuple& t) {
  std::string s;
  const auto syms = symbols_of(ports, t);
  for (std::size_t i = 0; i < syms.size(); ++i) {
    if (i) s += '|';
    s += syms[i];
  }
  return s;
}

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(sep, start);
    parts.emplace_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

Tuple parse_tuple_text(std::span<const Port> ports, std::string_view text) {
  if (ports.empty() && text.empty()) return {};
  return parse_tuple(ports, split(text, '|'));
}

std::string render_word(std::span<const Port> ports, const Word& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ',';
    s += render_tuple(ports, w[i]);
  }
  return s;
}

Word parse_word(std::span<const Port> ports, std::string_view text) {
  Word w;
  if (text.empty()) return w;
  for (const auto& part : split(text, ',')) w.push_back(parse_tuple_text(ports, part));
  return w;
}

std::size_t port_index(std::span<const Port> ports, std::string_view name) {
  for (std::size_t i = 0; i < ports.size(); ++i)
    if (ports[i].name == name) return i;
  return npos;
}

bool same_interface(const Box& a, const Box& b) { return a.in == b.in && a.out == b.out; }

std::string describe(const Box& b) {
  std::string s = b.name + "(";
  for (std::size_t i = 0; i < b.in.size(); ++i) s += (i ? "," : "") + b.in[i].name;
  s += " -> ";
  for (std::size_t i = 0; i < b.out.size(); ++i) s += (i ? "," : "") + b.out[i].name;
  return s + ")";
}

void validate_box(const Box& b) {
  auto side = [&](const Ports& ports, const char* which) {
    std::set<std::string> seen;
    for (const auto& p : ports) {
      if (!seen.insert(p.name).second)
        throw InvariantError("box '" + b.name + "': duplicate " + which + " port '" + p.name + "'");
      if (p.alphabet.empty())
        throw InvariantError("box '" + b.name + "': port '" + p.name + "' has an empty alphabet");
      std::set<std::string> syms(p.alphabet.begin(), p.alphabet.end());
      if (syms.size() != p.alphabet.size())
        throw InvariantError("box '" + b.name + "': port '" + p.name +
                             "' repeats a symbol in its alphabet");
    }
  };
  side(b.in, "input");
  side(b.out, "output");
}

Port binary_port(std::string name) { return Port{std::move(name), {"0", "1"}}; }

Box binary_box(std::string name, const std::vector<std::string>& ins,
               const std::vector<std::string>& outs) {
  Box b{std::move(name), {}, {}};
  for (const auto& n : ins) b.in.push_back(binary_port(n));
  for (const auto& n : outs) b.out.push_back(binary_port(n));
  return b;
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace wdsec
