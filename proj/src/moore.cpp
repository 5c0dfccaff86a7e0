#include "wdsec/moore.hpp"

#include <deque>
#include <map>
#include <sstream>

namespace wdsec {
namespace {

std::string tuple_text(const std::vector<Symbol>& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + t[i];
  return s + ")";
}

}  // namespace

Report validate_machine(const MachineDef& def) {
  Report r;
  try {
    validate_box(def.box);
  } catch (const InvariantError& e) {
    r.error("box", e.what());
    return r;
  }
  std::map<std::string, std::size_t> index;
  for (const auto& s : def.states)
    if (!index.emplace(s, index.size()).second) r.error("structure", "duplicate state '" + s + "'");
  if (def.states.empty()) r.error("structure", "machine has no states");
  if (!index.count(def.init)) r.error("structure", "initial state '" + def.init + "' is not declared");

  const auto nin = def.box.in_count();
  std::vector<std::optional<std::size_t>> update(index.size() * nin);
  for (const auto& t : def.update) {
    const auto s = index.find(t.state);
    const auto n = index.find(t.next);
    if (s == index.end()) {
      r.error("structure", "transition from undeclared state '" + t.state + "'");
      continue;
    }
    if (n == index.end()) {
      r.error("structure", "transition to undeclared state '" + t.next + "'");
      continue;
    }
    std::size_t code = 0;
    try {
      code = encode(def.box.in, parse_tuple(def.box.in, t.input));
    } catch (const AlphabetError& e) {
      r.error("alphabet", "transition (" + t.state + ", " + tuple_text(t.input) + "): " + e.what());
      continue;
    }
    auto& slot = update[s->second * nin + code];
    if (slot && *slot != n->second)
      r.error("structure", "conflicting transitions for (" + t.state + ", " + tuple_text(t.input) + ")");
    slot = n->second;
  }
  std::vector<bool> has_readout(index.size(), false);
  for (const auto& o : def.readout) {
    const auto s = index.find(o.state);
    if (s == index.end()) {
      r.error("structure", "readout for undeclared state '" + o.state + "'");
      continue;
    }
    try {
      parse_tuple(def.box.out, o.output);
    } catch (const AlphabetError& e) {
      r.error("alphabet", "readout of '" + o.state + "': " + e.what());
      continue;
    }
    if (has_readout[s->second]) r.error("structure", "duplicate readout for '" + o.state + "'");
    has_readout[s->second] = true;
  }

  bool total = true;
  for (const auto& [name, si] : index) {
    if (!has_readout[si]) {
      r.error("totality", "no readout for state '" + name + "'");
      total = false;
    }
    for (std::size_t x = 0; x < nin; ++x)
      if (!update[si * nin + x]) {
        r.error("totality", "missing transition for (" + name + ", " +
                                tuple_text(symbols_of(def.box.in, decode(def.box.in, x))) + ")");
        total = false;
      }
  }
  if (total && r.ok()) {
    std::vector<bool> seen(index.size(), false);
    std::deque<std::size_t> queue{index.at(def.init)};
    seen[queue.front()] = true;
    while (!queue.empty()) {
      const auto s = queue.front();
      queue.pop_front();
      for (std::size_t x = 0; x < nin; ++x) {
        const auto n = *update[s * nin + x];
        if (!seen[n]) {
          seen[n] = true;
          queue.push_back(n);
        }
      }
    }
    for (std::size_t s = 0; s < def.states.size(); ++s)
      if (!seen[index.at(def.states[s])])
        r.warning("reachability", "state '" + def.states[s] + "' is unreachable from '" + def.init + "'");
  }
  return r;
}

MooreMachine::MooreMachine(std::string name, Box box, std::vector<std::string> states,
                           std::size_t init, std::vector<std::size_t> update,
                           std::vector<std::size_t> readout)
    : name_(std::move(name)),
      box_(std::move(box)),
      states_(std::move(states)),
      init_(init),
      inputs_(box_.in_count()),
      update_(std::move(update)),
      readout_(std::move(readout)) {
  validate_box(box_);
  if (states_.empty()) throw InvariantError("machine '" + name_ + "' has no states");
  if (init_ >= states_.size()) throw InvariantError("machine '" + name_ + "': init out of range");
  if (update_.size() != states_.size() * inputs_)
    throw InvariantError("machine '" + name_ + "': transition table is not total");
  if (readout_.size() != states_.size())
    throw InvariantError("machine '" + name_ + "': readout table is not total");
  for (auto n : update_)
    if (n >= states_.size()) throw InvariantError("machine '" + name_ + "': transition to unknown state");
  const auto nout = box_.out_count();
  for (auto o : readout_)
    if (o >= nout) throw AlphabetError("machine '" + name_ + "': readout outside the output alphabet");
}

MooreMachine MooreMachine::from_def(const MachineDef& def) {
  auto report = validate_machine(def);
  if (!report.ok()) throw ValidationError("invalid machine '" + def.name + "'", report);
  std::map<std::string, std::size_t> index;
  for (const auto& s : def.states) index.emplace(s, index.size());
  const auto nin = def.box.in_count();
  std::vector<std::size_t> update(def.states.size() * nin);
  for (const auto& t : def.update)
    update[index.at(t.state) * nin + encode(def.box.in, parse_tuple(def.box.in, t.input))] = index.at(t.next);
  std::vector<std::size_t> readout(def.states.size());
  for (const auto& o : def.readout)
    readout[index.at(o.state)] = encode(def.box.out, parse_tuple(def.box.out, o.output));
  return MooreMachine(def.name, def.box, def.states, index.at(def.init), std::move(update),
                      std::move(readout));
}

MachineDef MooreMachine::to_def() const {
  MachineDef d{name_, box_, states_, states_[init_], {}, {}};
  for (std::size_t s = 0; s < states_.size(); ++s) {
    for (std::size_t x = 0; x < inputs_; ++x)
      d.update.push_back({states_[s], symbols_of(box_.in, decode(box_.in, x)), states_[next(s, x)]});
    d.readout.push_back({states_[s], symbols_of(box_.out, readout(s))});
  }
  return d;
}

std::size_t MooreMachine::state_index(const std::string& name) const {
  for (std::size_t i = 0; i < states_.size(); ++i)
    if (states_[i] == name) return i;
  return npos;
}

MooreMachine MooreMachine::renamed(std::string name) const {
  auto m = *this;
  m.name_ = std::move(name);
  return m;
}

MooreMachine MooreMachine::with_box(const Box& box) const {
  if (!same_interface(box, box_))
    throw CompositionError("machine '" + name_ + "' cannot move from " + describe(box_) + " to " +
                           describe(box));
  auto m = *this;
  m.box_ = box;
  return m;
}

bool same_tables(const MooreMachine& a, const MooreMachine& b) {
  return same_interface(a.box(), b.box()) && a.states() == b.states() && a.init() == b.init() &&
         a.view().update.size() == b.view().update.size() &&
         std::equal(a.view().update.begin(), a.view().update.end(), b.view().update.begin()) &&
         std::equal(a.view().readout.begin(), a.view().readout.end(), b.view().readout.begin());
}

StepResult step(const MooreMachine& m, std::size_t state, const Tuple& input) {
  if (state >= m.state_count()) throw PreconditionError("state index out of range");
  const auto code = encode(m.box().in, input);
  return {m.next(state, code), m.readout(state)};
}

Word run(const MooreMachine& m, const Word& word) {
  Word out;
  out.reserve(word.size());
  auto s = m.init();
  for (const auto& x : word) {
    auto r = step(m, s, x);
    out.push_back(std::move(r.output));
    s = r.state;
  }
  return out;
}

std::vector<std::size_t> reachable_states(const MooreMachine& m) {
  std::vector<bool> seen(m.state_count(), false);
  std::vector<std::size_t> order{m.init()};
  seen[m.init()] = true;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t x = 0; x < m.input_count(); ++x) {
      const auto n = m.next(order[i], x);
      if (!seen[n]) {
        seen[n] = true;
        order.push_back(n);
      }
    }
  return order;
}

std::uint64_t fingerprint(const MooreMachine& m) {
  std::ostringstream os;
  os << describe(m.box()) << ';' << m.init() << ';';
  for (const auto& s : m.states()) os << s << ',';
  for (auto n : m.view().update) os << n << ' ';
  os << ';';
  for (auto o : m.view().readout) os << o << ' ';
  return fnv1a(os.str());
}

std::optional<HomViolation> check_hom(const MachineHom& h) {
  const auto& a = h.source;
  const auto& b = h.target;
  if (!same_interface(a.box(), b.box()))
    return HomViolation{"box", "source and target live over different boxes"};
  if (h.state_map.size() != a.state_count())
    return HomViolation{"size", "state map covers " + std::to_string(h.state_map.size()) + " of " +
                                    std::to_string(a.state_count()) + " states"};
  for (auto t : h.state_map)
    if (t >= b.state_count()) return HomViolation{"range", "state map leaves the target states"};
  if (h.state_map[a.init()] != b.init())
    return HomViolation{"init", "init '" + a.states()[a.init()] + "' maps to '" +
                                    b.states()[h.state_map[a.init()]] + "', not '" +
                                    b.states()[b.init()] + "'"};
  for (std::size_t s = 0; s < a.state_count(); ++s) {
    if (a.output_code(s) != b.output_code(h.state_map[s]))
      return HomViolation{"readout", "readout of '" + a.states()[s] + "' differs from readout of '" +
                                         b.states()[h.state_map[s]] + "'"};
    for (std::size_t x = 0; x < a.input_count(); ++x) {
      const auto lhs = h.state_map[a.next(s, x)];
      const auto rhs = b.next(h.state_map[s], x);
      if (lhs != rhs)
        return HomViolation{
            "update", "square fails at state '" + a.states()[s] + "', input (" +
                          render_tuple(a.box().in, decode(a.box().in, x)) + "): map(update) = '" +
                          b.states()[lhs] + "' but update(map) = '" + b.states()[rhs] + "'"};
    }
  }
  return std::nullopt;
}

void require_hom(const MachineHom& h) {
  if (auto v = check_hom(h))
    throw InvariantError("'" + h.name + "' is not a machine morphism: " + v->message);
}

MachineHom identity_hom(const MooreMachine& m) {
  MachineHom h{"id_" + m.name(), m, m, {}};
  for (std::size_t s = 0; s < m.state_count(); ++s) h.state_map.push_back(s);
  return h;
}

MachineHom compose_hom(const MachineHom& second, const MachineHom& first) {
  if (!same_tables(first.target, second.source))
    throw CompositionError("cannot compose '" + second.name + "' after '" + first.name + "'");
  MachineHom h{second.name + " o " + first.name, first.source, second.target, {}};
  for (auto t : first.state_map) h.state_map.push_back(second.state_map.at(t));
  return h;
}

bool is_isomorphism(const MachineHom& h) {
  if (check_hom(h) || h.source.state_count() != h.target.state_count()) return false;
  std::vector<bool> hit(h.target.state_count(), false);
  for (auto t : h.state_map) {
    if (hit[t]) return false;
    hit[t] = true;
  }
  return true;
}

}  // namespace wdsec
