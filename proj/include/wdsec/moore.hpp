#pragma once

// Moore machines over a box: finite states, a total transition table on
// input tuples and a state-only readout. Output is read before the
// transition, so a run of n inputs yields n outputs starting from init.

#include <optional>
#include <string>
#include <vector>

#include "wdsec/box.hpp"
#include "wdsec/error.hpp"
#include "wdsec/kernels.hpp"

namespace wdsec {

/// File-level presentation: everything by name, tables as explicit entries.
struct MachineDef {
  struct Transition {
    std::string state;
    std::vector<Symbol> input;
    std::string next;
    bool operator==(const Transition&) const = default;
  };
  struct Readout {
    std::string state;
    std::vector<Symbol> output;
    bool operator==(const Readout&) const = default;
  };

  std::string name;
  Box box;
  std::vector<std::string> states;
  std::string init;
  std::vector<Transition> update;
  std::vector<Readout> readout;

  bool operator==(const MachineDef&) const = default;
};

/// Totality, alphabet and reference errors; unreachable states as warnings.
Report validate_machine(const MachineDef& def);

class MooreMachine {
 public:
  /// `update` is |states| x in_count, row-major; `readout` holds output codes.
  /// Throws InvariantError on size or range problems.
  MooreMachine(std::string name, Box box, std::vector<std::string> states, std::size_t init,
               std::vector<std::size_t> update, std::vector<std::size_t> readout);

  /// Throws ValidationError carrying the report when `def` is invalid.
  static MooreMachine from_def(const MachineDef& def);
  MachineDef to_def() const;

  template <class Next, class Out>
  static MooreMachine tabulate(std::string name, Box box, std::vector<std::string> states,
                               std::size_t init, Next&& next, Out&& out) {
    const auto nin = box.in_count();
    std::vector<std::size_t> update(states.size() * nin);
    std::vector<std::size_t> readout(states.size());
    for (std::size_t s = 0; s < states.size(); ++s) {
      for (std::size_t x = 0; x < nin; ++x) update[s * nin + x] = next(s, decode(box.in, x));
      readout[s] = encode(box.out, out(s));
    }
    return MooreMachine(std::move(name), std::move(box), std::move(states), init, std::move(update),
                        std::move(readout));
  }

  const std::string& name() const { return name_; }
  const Box& box() const { return box_; }
  const std::vector<std::string>& states() const { return states_; }
  std::size_t state_count() const { return states_.size(); }
  std::size_t init() const { return init_; }
  std::size_t input_count() const { return inputs_; }

  std::size_t next(std::size_t state, std::size_t input_code) const {
    return update_[state * inputs_ + input_code];
  }
  std::size_t output_code(std::size_t state) const { return readout_[state]; }
  Tuple readout(std::size_t state) const { return decode(box_.out, readout_[state]); }
  std::size_t state_index(const std::string& name) const;  // npos if absent

  kernels::TableView view() const {
    return {states_.size(), inputs_, init_, update_, readout_};
  }

  MooreMachine renamed(std::string name) const;
  /// Same tables over another box with the same interface.
  MooreMachine with_box(const Box& box) const;

  bool operator==(const MooreMachine&) const = default;

 private:
  std::string name_;
  Box box_;
  std::vector<std::string> states_;
  std::size_t init_ = 0;
  std::size_t inputs_ = 0;
  std::vector<std::size_t> update_;
  std::vector<std::size_t> readout_;
};

/// Equal states, init and tables over the same interface (labels ignored).
bool same_tables(const MooreMachine& a, const MooreMachine& b);

struct StepResult {
  std::size_t state;
  Tuple output;
};

/// (update(s, x), readout(s)). Throws AlphabetError / PreconditionError.
StepResult step(const MooreMachine& m, std::size_t state, const Tuple& input);
Word run(const MooreMachine& m, const Word& word);

/// States reachable from init, in breadth-first order.
std::vector<std::size_t> reachable_states(const MooreMachine& m);

std::uint64_t fingerprint(const MooreMachine& m);

/// A map of states commuting with init, readout and update.
struct MachineHom {
  std::string name;
  MooreMachine source;
  MooreMachine target;
  std::vector<std::size_t> state_map;  // source state -> target state

  bool operator==(const MachineHom&) const = default;
};

struct HomViolation {
  std::string kind;  // "box", "size", "range", "init", "readout", "update"
  std::string message;
};

std::optional<HomViolation> check_hom(const MachineHom& h);
/// Throws InvariantError with the violated instance.
void require_hom(const MachineHom& h);

MachineHom identity_hom(const MooreMachine& m);
/// second o first; requires first.target to have the same tables as second.source.
MachineHom compose_hom(const MachineHom& second, const MachineHom& first);
bool is_isomorphism(const MachineHom& h);

}  // namespace wdsec
