#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "wdsec/kernels.hpp"

namespace wdsec::kernels::parallel {

std::vector<std::size_t> output_words(const TableView& m, std::size_t length) {
  const auto count = static_cast<std::int64_t>(word_count(m.inputs, length));
  std::vector<std::size_t> out(static_cast<std::size_t>(count) * length);
#pragma omp parallel
  {
    std::vector<std::size_t> word(length);
#pragma omp for schedule(static)
    for (std::int64_t w = 0; w < count; ++w) {
      const auto wi = static_cast<std::size_t>(w);
      word_at(m.inputs, wi, word);
      auto s = m.init;
      for (std::size_t t = 0; t < length; ++t) {
        out[wi * length + t] = m.readout[s];
        s = m.update[s * m.inputs + word[t]];
      }
    }
  }
  return out;
}

std::optional<std::size_t> first_divergence(const TableView& a, const TableView& b,
                                            std::size_t length) {
  const auto count = static_cast<std::int64_t>(word_count(a.inputs, length));
  constexpr auto none = std::numeric_limits<std::int64_t>::max();
  std::int64_t best = none;
#pragma omp parallel
  {
    std::vector<std::size_t> word(length);
#pragma omp for schedule(static) reduction(min : best)
    for (std::int64_t w = 0; w < count; ++w) {
      if (w >= best) continue;
      word_at(a.inputs, static_cast<std::size_t>(w), word);
      auto sa = a.init;
      auto sb = b.init;
      for (std::size_t t = 0; t < length; ++t) {
        if (a.readout[sa] != b.readout[sb]) {
          best = std::min(best, w);
          break;
        }
        sa = a.update[sa * a.inputs + word[t]];
        sb = b.update[sb * b.inputs + word[t]];
      }
    }
  }
  if (best == none) return std::nullopt;
  return static_cast<std::size_t>(best);
}

std::vector<std::size_t> filter_indices(std::size_t count,
                                        const std::function<bool(std::size_t)>& keep) {
  std::vector<std::size_t> out;
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel
  {
    std::vector<std::size_t> local;
#pragma omp for schedule(dynamic, 256) nowait
    for (std::int64_t i = 0; i < n; ++i)
      if (keep(static_cast<std::size_t>(i))) local.push_back(static_cast<std::size_t>(i));
#pragma omp critical
    out.insert(out.end(), local.begin(), local.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace wdsec::kernels::parallel
