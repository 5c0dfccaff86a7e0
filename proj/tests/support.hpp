#pragma once

#include <filesystem>

#include "wdsec/io.hpp"

namespace wdsec::testing {

inline std::filesystem::path fixture_path(const std::string& rel) {
  return std::filesystem::path(WDSEC_FIXTURE_DIR) / rel;
}

/// One binary input, one binary output; outputs the previous input.
inline MooreMachine delay(const std::string& name = "delay", const std::string& box = "Delay") {
  return MooreMachine::tabulate(
      name, binary_box(box, {"x"}, {"y"}), {"0", "1"}, 0, [](std::size_t, const Tuple& x) { return x[0]; },
      [](std::size_t s) { return Tuple{s}; });
}

/// Outputs the input from two steps ago.
inline MooreMachine delay2() {
  return MooreMachine::tabulate(
      "delay2", binary_box("Delay", {"x"}, {"y"}), {"00", "01", "10", "11"}, 0,
      [](std::size_t s, const Tuple& x) { return ((s & 1) << 1) | x[0]; },
      [](std::size_t s) { return Tuple{s >> 1}; });
}

inline MooreMachine constant(std::size_t value, const Box& box) {
  return MooreMachine::tabulate(
      "const" + std::to_string(value), box, {"c"}, 0, [](std::size_t, const Tuple&) { return std::size_t{0}; },
      [&](std::size_t) { return Tuple(box.out.size(), value); });
}

/// Every input word of exactly `length` over `m`'s input ports.
inline std::vector<Word> all_words(const Box& box, std::size_t length) {
  const auto radix = box.in_count();
  const auto count = kernels::word_count(radix, length);
  std::vector<Word> out;
  std::vector<std::size_t> codes(length);
  for (std::size_t n = 0; n < count; ++n) {
    kernels::word_at(radix, n, codes);
    Word w;
    for (auto c : codes) w.push_back(decode(box.in, c));
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace wdsec::testing
