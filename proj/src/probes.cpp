#include "wdsec/probes.hpp"

#include <algorithm>
#include <set>

namespace wdsec::probes {
namespace {

void canonicalize(std::vector<std::string>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

Test trace_set(std::size_t depth, std::string name) {
  if (name.empty()) name = "traces" + std::to_string(depth);
  return Test{std::move(name), TestKind::trace_set, depth, Comparator::equality};
}
Test state_set(std::string name) {
  if (name.empty()) name = "states";
  return Test{std::move(name), TestKind::state_set, 0, Comparator::cardinality};
}
Test terminal(std::string name) {
  if (name.empty()) name = "terminal";
  return Test{std::move(name), TestKind::terminal, 0, Comparator::equality};
}
Test output_image(std::size_t step, std::string name) {
  if (name.empty()) name = "outputs@" + std::to_string(step);
  return Test{std::move(name), TestKind::output_image, step, Comparator::equality};
}

std::vector<Test> full_battery(std::size_t depth) { return {trace_set(depth), state_set()}; }

Outcome run_test(const Test& t, const MooreMachine& m, kernels::Exec exec) {
  Outcome o{t.name, {}};
  const auto& box = m.box();
  switch (t.kind) {
    case TestKind::trace_set: {
      const auto k = t.param;
      const auto outs = kernels::output_words(m.view(), k, exec);
      const auto count = kernels::word_count(m.input_count(), k);
      std::vector<std::size_t> codes(k);
      o.value.reserve(count);
      for (std::size_t w = 0; w < count; ++w) {
        kernels::word_at(m.input_count(), w, codes);
        std::string in, out;
        for (std::size_t i = 0; i < k; ++i) {
          if (i) {
            in += ',';
            out += ',';
          }
          in += render_tuple(box.in, decode(box.in, codes[i]));
          out += render_tuple(box.out, decode(box.out, outs[w * k + i]));
        }
        o.value.push_back("in=" + in + ";out=" + out);
      }
      break;
    }
    case TestKind::state_set:
      o.value = m.states();
      break;
    case TestKind::terminal:
      o.value = {"*"};
      break;
    case TestKind::output_image: {
      std::set<std::size_t> layer{m.init()};
      for (std::size_t i = 0; i < t.param; ++i) {
        std::set<std::size_t> next;
        for (auto s : layer)
          for (std::size_t x = 0; x < m.input_count(); ++x) next.insert(m.next(s, x));
        layer = std::move(next);
      }
      for (auto s : layer) o.value.push_back(render_tuple(box.out, m.readout(s)));
      break;
    }
  }
  canonicalize(o.value);
  return o;
}

Comparison compare_outcomes(const Test& t, const Outcome& a, const Outcome& b) {
  if (a.test != t.name || b.test != t.name)
    throw PreconditionError("outcomes of '" + a.test + "' and '" + b.test + "' compared under test '" +
                            t.name + "'");
  if (t.comparator == Comparator::cardinality) return {a.value.size() == b.value.size(), std::nullopt};
  if (a.value == b.value) return {true, std::nullopt};
  std::vector<std::string> diff;
  std::set_symmetric_difference(a.value.begin(), a.value.end(), b.value.begin(), b.value.end(),
                                std::back_inserter(diff));
  return {false, diff.front()};
}

Outcome transport(const Test& t, const MachineHom& h, const Outcome& outcome) {
  switch (t.kind) {
    case TestKind::trace_set:
    case TestKind::output_image:
      return outcome;
    case TestKind::terminal:
      return Outcome{outcome.test, {"*"}};
    case TestKind::state_set: {
      Outcome o{outcome.test, {}};
      for (const auto& s : outcome.value) {
        const auto i = h.source.state_index(s);
        if (i == npos) throw PreconditionError("state '" + s + "' is not a state of '" + h.source.name() + "'");
        o.value.push_back(h.target.states()[h.state_map[i]]);
      }
      canonicalize(o.value);
      return o;
    }
  }
  return outcome;
}

void validate_kb(const KnowledgeBase& kb) {
  for (const auto& e : kb.entries)
    if (!same_interface(e.machine.box(), kb.box))
      throw InvariantError("knowledge base entry '" + e.name + "' lives over " +
                           describe(e.machine.box()) + ", not " + describe(kb.box));
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::exact: return "Exact";
    case Classification::ambiguous: return "Ambiguous";
    case Classification::unknown: return "Unknown";
  }
  return "?";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::agree: return "agree";
    case Verdict::disagree: return "disagree";
    case Verdict::unavailable: return "n/a";
  }
  return "?";
}

Classification classify(std::size_t candidates) {
  if (candidates == 0) return Classification::unknown;
  return candidates == 1 ? Classification::exact : Classification::ambiguous;
}

LearnResult yoneda_filter(const KnowledgeBase& kb, const std::vector<Test>& battery,
                          TargetOracle& oracle) {
  validate_kb(kb);
  LearnResult r;
  std::vector<std::optional<Outcome>> target;
  for (const auto& t : battery) {
    r.tests.push_back(t.name);
    std::optional<Outcome> o;
    try {
      o = oracle.query(t);
    } catch (const std::exception&) {
      o.reset();
    }
    if (o && o->test != t.name) o.reset();
    if (!o) r.unavailable_tests.push_back(t.name);
    target.push_back(std::move(o));
  }

  const auto n = static_cast<std::int64_t>(kb.entries.size());
  r.matrix.assign(kb.entries.size(), std::vector<Verdict>(battery.size(), Verdict::unavailable));
  r.witness.assign(kb.entries.size(), std::nullopt);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& entry = kb.entries[static_cast<std::size_t>(i)];
    for (std::size_t j = 0; j < battery.size(); ++j) {
      if (!target[j]) continue;
      const auto mine = run_test(battery[j], entry.machine, kernels::Exec::serial);
      const auto cmp = compare_outcomes(battery[j], mine, *target[j]);
      r.matrix[static_cast<std::size_t>(i)][j] = cmp.agree ? Verdict::agree : Verdict::disagree;
      if (!cmp.agree && !r.witness[static_cast<std::size_t>(i)])
        r.witness[static_cast<std::size_t>(i)] = battery[j].name + ": " + cmp.witness.value_or("sizes differ");
    }
  }
  for (std::size_t i = 0; i < kb.entries.size(); ++i) {
    r.rows.push_back(kb.entries[i].name);
    const auto& row = r.matrix[i];
    if (std::none_of(row.begin(), row.end(), [](Verdict v) { return v == Verdict::disagree; }))
      r.candidates.push_back(kb.entries[i].name);
  }
  r.classification = classify(r.candidates.size());
  return r;
}

LearnResult architecture_probe(TargetOracle& oracle, const Box& target_box,
                               const std::vector<Hypothesis>& hypotheses, std::size_t depth) {
  const auto test = trace_set(depth);
  LearnResult r;
  r.tests.push_back(test.name);
  std::optional<Outcome> target;
  try {
    target = oracle.query(test);
  } catch (const std::exception&) {
    target.reset();
  }
  if (!target) r.unavailable_tests.push_back(test.name);

  for (const auto& h : hypotheses) {
    validate_system(h.system);
    if (!same_interface(h.system.outer(), target_box))
      throw CompositionError("hypothesis '" + h.name + "' composes to " + describe(h.system.outer()) +
                             ", not " + describe(target_box));
    r.rows.push_back(h.name);
    if (!target) {
      r.matrix.push_back({Verdict::unavailable});
      r.witness.emplace_back();
      r.candidates.push_back(h.name);
      continue;
    }
    const auto cmp = compare_outcomes(test, run_test(test, composite(h.system)), *target);
    r.matrix.push_back({cmp.agree ? Verdict::agree : Verdict::disagree});
    r.witness.push_back(cmp.agree ? std::nullopt : cmp.witness);
    if (cmp.agree) r.candidates.push_back(h.name);
  }
  r.classification = classify(r.candidates.size());
  return r;
}

}  // namespace wdsec::probes
