#include "wdsec/oracle.hpp"

#include <map>

namespace wdsec::oracle {
namespace {

void require_same_box(const MooreMachine& a, const MooreMachine& b) {
  if (!same_interface(a.box(), b.box()))
    throw CompositionError("cannot compare machines over " + describe(a.box()) + " and " +
                           describe(b.box()));
}

}  // namespace

bool trace_equivalent(const MooreMachine& a, const MooreMachine& b, std::size_t depth,
                      kernels::Exec exec) {
  require_same_box(a, b);
  if (depth == 0) return true;
  // Output words are prefix-closed: a difference on a shorter word survives
  // every extension, so length == depth covers all lengths <= depth.
  return !kernels::first_divergence(a.view(), b.view(), depth, exec).has_value();
}

std::optional<Word> find_distinguishing_word(const MooreMachine& a, const MooreMachine& b,
                                             std::size_t depth, kernels::Exec exec) {
  require_same_box(a, b);
  for (std::size_t len = 1; len <= depth; ++len) {
    const auto hit = kernels::first_divergence(a.view(), b.view(), len, exec);
    if (!hit) continue;
    std::vector<std::size_t> codes(len);
    kernels::word_at(a.input_count(), *hit, codes);
    Word w;
    for (auto c : codes) w.push_back(decode(a.box().in, c));
    return w;
  }
  return std::nullopt;
}

Word run_raw(const MooreMachine& m, const Word& word) {
  const auto t = m.view();
  Word out;
  auto s = t.init;
  for (const auto& x : word) {
    out.push_back(decode(m.box().out, t.readout[s]));
    s = t.update[s * t.inputs + encode(m.box().in, x)];
  }
  return out;
}

Word stagewise_simulate(const Wiring& w, const std::vector<MooreMachine>& machines, const Word& word) {
  if (w.outer.size() != 1 || machines.size() != w.inner.size())
    throw CompositionError("stagewise simulation needs one machine per inner box and one outer box");
  for (std::size_t i = 0; i < machines.size(); ++i)
    if (!same_interface(machines[i].box(), w.inner[i]))
      throw CompositionError("machine " + std::to_string(i) + " does not fit its inner box");

  std::vector<std::size_t> state;
  for (const auto& m : machines) state.push_back(m.view().init);
  Word out;
  BoxValues reads(machines.size());
  for (const auto& y : word) {
    for (std::size_t i = 0; i < machines.size(); ++i)
      reads[i] = decode(machines[i].box().out, machines[i].view().readout[state[i]]);
    const auto r = eval(w, reads, BoxValues{y});
    out.push_back(r.outer_out[0]);
    for (std::size_t i = 0; i < machines.size(); ++i) {
      const auto t = machines[i].view();
      state[i] = t.update[state[i] * t.inputs + encode(machines[i].box().in, r.inner_in[i])];
    }
  }
  return out;
}

bool bisimilar(const MooreMachine& a, const MooreMachine& b) {
  require_same_box(a, b);
  const auto ta = a.view();
  const auto tb = b.view();
  const auto na = ta.states;
  const auto n = na + tb.states;
  const auto inputs = ta.inputs;
  auto next = [&](std::size_t s, std::size_t x) {
    return s < na ? ta.update[s * inputs + x] : na + tb.update[(s - na) * inputs + x];
  };
  auto out = [&](std::size_t s) { return s < na ? ta.readout[s] : tb.readout[s - na]; };

  std::vector<std::size_t> block(n);
  std::size_t blocks = 0;
  {
    std::map<std::size_t, std::size_t> by_output;
    for (std::size_t s = 0; s < n; ++s) {
      auto [it, fresh] = by_output.emplace(out(s), by_output.size());
      block[s] = it->second;
    }
    blocks = by_output.size();
  }
  for (;;) {
    std::map<std::vector<std::size_t>, std::size_t> signature;
    std::vector<std::size_t> refined(n);
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<std::size_t> sig{block[s]};
      for (std::size_t x = 0; x < inputs; ++x) sig.push_back(block[next(s, x)]);
      auto [it, fresh] = signature.emplace(std::move(sig), signature.size());
      refined[s] = it->second;
    }
    block = std::move(refined);
    if (signature.size() == blocks) break;
    blocks = signature.size();
  }
  return block[ta.init] == block[na + tb.init];
}

EvalResult eval_stagewise(const Wiring& g, const Wiring& f, const BoxValues& inner_out,
                          const BoxValues& outer_in) {
  const auto mid_out = eval_out(f, inner_out);
  const auto upper = eval(g, mid_out, outer_in);
  const auto lower = eval(f, inner_out, upper.inner_in);
  return EvalResult{lower.inner_in, upper.outer_out};
}

}  // namespace wdsec::oracle
