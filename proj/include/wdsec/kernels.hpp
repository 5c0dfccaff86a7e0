#pragma once

// Data-parallel inner loops shared by the oracle, the probes and the
// finite-category enumerator. Every kernel has a serial reference in
// `serial::` and an OpenMP version in `parallel::`; both must return
// identical results (tests/test_kernels.cpp, bench/bench_kernels.cpp).

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace wdsec::kernels {

enum class Exec { serial, parallel };

/// Raw transition/readout tables of a Moore machine. Input and output
/// tuples are given by their mixed-radix codes.
struct TableView {
  std::size_t states = 0;
  std::size_t inputs = 0;
  std::size_t init = 0;
  std::span<const std::size_t> update;   // states * inputs, row-major by state
  std::span<const std::size_t> readout;  // one output code per state
};

/// radix^length; throws PreconditionError past `limit`.
std::size_t word_count(std::size_t radix, std::size_t length, std::size_t limit = 1ULL << 28);
/// Decodes word number `index` (first letter most significant) into `out`.
void word_at(std::size_t radix, std::size_t index, std::span<std::size_t> out);

namespace serial {
std::vector<std::size_t> output_words(const TableView& m, std::size_t length);
std::optional<std::size_t> first_divergence(const TableView& a, const TableView& b,
                                            std::size_t length);
std::vector<std::size_t> filter_indices(std::size_t count,
                                        const std::function<bool(std::size_t)>& keep);
}  // namespace serial

namespace parallel {
std::vector<std::size_t> output_words(const TableView& m, std::size_t length);
std::optional<std::size_t> first_divergence(const TableView& a, const TableView& b,
                                            std::size_t length);
std::vector<std::size_t> filter_indices(std::size_t count,
                                        const std::function<bool(std::size_t)>& keep);
}  // namespace parallel

/// Output codes of `m` on every input word of `length`, flattened as
/// [word index][step]; word index order is lexicographic on input codes.
inline std::vector<std::size_t> output_words(const TableView& m, std::size_t length,
                                             Exec exec = Exec::parallel) {
  return exec == Exec::serial ? serial::output_words(m, length)
                              : parallel::output_words(m, length);
}

/// Least word index of the given length on which the output words differ.
/// Both machines must read the same input alphabet.
inline std::optional<std::size_t> first_divergence(const TableView& a, const TableView& b,
                                                   std::size_t length,
                                                   Exec exec = Exec::parallel) {
  return exec == Exec::serial ? serial::first_divergence(a, b, length)
                              : parallel::first_divergence(a, b, length);
}

/// Indices i in [0, count) with keep(i), ascending. `keep` must be pure.
inline std::vector<std::size_t> filter_indices(std::size_t count,
                                               const std::function<bool(std::size_t)>& keep,
                                               Exec exec = Exec::parallel) {
  return exec == Exec::serial ? serial::filter_indices(count, keep)
                              : parallel::filter_indices(count, keep);
}

}  // namespace wdsec::kernels
