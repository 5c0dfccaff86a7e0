#include <vector>

#include "wdsec/error.hpp"
#include "wdsec/kernels.hpp"

namespace wdsec::kernels {

std::size_t word_count(std::size_t radix, std::size_t length, std::size_t limit) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < length; ++i) {
    if (radix != 0 && n > limit / radix)
      throw PreconditionError("word space " + std::to_string(radix) + "^" +
                              std::to_string(length) + " exceeds the enumeration limit");
    n *= radix;
  }
  return n;
}

void word_at(std::size_t radix, std::size_t index, std::span<std::size_t> out) {
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = index % radix;
    index /= radix;
  }
}

namespace serial {

std::vector<std::size_t> output_words(const TableView& m, std::size_t length) {
  const auto count = word_count(m.inputs, length);
  std::vector<std::size_t> out(count * length);
  std::vector<std::size_t> word(length);
  for (std::size_t w = 0; w < count; ++w) {
    word_at(m.inputs, w, word);
    auto s = m.init;
    for (std::size_t t = 0; t < length; ++t) {
      out[w * length + t] = m.readout[s];
      s = m.update[s * m.inputs + word[t]];
    }
  }
  return out;
}

std::optional<std::size_t> first_divergence(const TableView& a, const TableView& b,
                                            std::size_t length) {
  const auto count = word_count(a.inputs, length);
  std::vector<std::size_t> word(length);
  for (std::size_t w = 0; w < count; ++w) {
    word_at(a.inputs, w, word);
    auto sa = a.init;
    auto sb = b.init;
    for (std::size_t t = 0; t < length; ++t) {
      if (a.readout[sa] != b.readout[sb]) return w;
      sa = a.update[sa * a.inputs + word[t]];
      sb = b.update[sb * b.inputs + word[t]];
    }
  }
  return std::nullopt;
}

std::vector<std::size_t> filter_indices(std::size_t count,
                                        const std::function<bool(std::size_t)>& keep) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < count; ++i)
    if (keep(i)) out.push_back(i);
  return out;
}

}  // namespace serial
}  // namespace wdsec::kernels
