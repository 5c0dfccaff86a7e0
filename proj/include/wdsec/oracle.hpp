#pragma once

// Brute-force behavioural checks. Nothing here goes through apply_algebra:
// machines are read through their raw tables and wired networks are simulated
// step by step, so these results can be used to check the algebra.

#include <optional>
#include <vector>

#include "wdsec/kernels.hpp"
#include "wdsec/moore.hpp"
#include "wdsec/wiring.hpp"

namespace wdsec::oracle {

inline constexpr std::size_t kDefaultDepth = 6;

/// Same output word on every input word of length <= depth.
bool trace_equivalent(const MooreMachine& a, const MooreMachine& b, std::size_t depth = kDefaultDepth,
                      kernels::Exec exec = kernels::Exec::parallel);

/// Shortest, then lexicographically least (by alphabet order), input word on
/// which the outputs differ, searching lengths 1..depth.
std::optional<Word> find_distinguishing_word(const MooreMachine& a, const MooreMachine& b,
                                             std::size_t depth = kDefaultDepth,
                                             kernels::Exec exec = kernels::Exec::parallel);

/// Runs the wired network one step at a time without building the composite.
Word stagewise_simulate(const Wiring& w, const std::vector<MooreMachine>& machines, const Word& word);

/// Output-respecting bisimilarity of the initial states, by partition refinement
/// over the disjoint union of both state sets.
bool bisimilar(const MooreMachine& a, const MooreMachine& b);

/// g o f evaluated in two stages: B_out = f_out(A_out), B_in = g_in(B_out, C_in),
/// A_in = f_in(A_out, B_in), C_out = g_out(B_out).
EvalResult eval_stagewise(const Wiring& g, const Wiring& f, const BoxValues& inner_out,
                          const BoxValues& outer_in);

/// Raw-table run (readout before update).
Word run_raw(const MooreMachine& m, const Word& word);

}  // namespace wdsec::oracle
