#pragma once

// Tests as functors from machines over a box to finite sets, and the
// attacker's filtering of a knowledge base by test agreement.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wdsec/algebra.hpp"
#include "wdsec/moore.hpp"

namespace wdsec::probes {

enum class TestKind { trace_set, state_set, terminal, output_image };
enum class Comparator { equality, cardinality };

struct Test {
  std::string name;
  TestKind kind = TestKind::terminal;
  std::size_t param = 0;  // depth for trace_set, step for output_image
  Comparator comparator = Comparator::equality;

  bool operator==(const Test&) const = default;
};

Test trace_set(std::size_t depth, std::string name = "");
Test state_set(std::string name = "");
Test terminal(std::string name = "");
Test output_image(std::size_t step, std::string name = "");

/// The default battery: TraceSet(depth) compared literally, StateSet by size.
std::vector<Test> full_battery(std::size_t depth = 6);

/// A test result: a finite set given as its sorted, distinct elements.
struct Outcome {
  std::string test;
  std::vector<std::string> value;

  bool operator==(const Outcome&) const = default;
};

/// TraceSet(k): every "in=<word>;out=<word>" pair over input words of length k.
/// StateSet: the declared states. Terminal: {"*"}. OutputImage(t): readouts of
/// the states reachable after exactly t inputs.
Outcome run_test(const Test& t, const MooreMachine& m,
                 kernels::Exec exec = kernels::Exec::parallel);

struct Comparison {
  bool agree = false;
  /// First element in one outcome but not the other (equality comparator).
  std::optional<std::string> witness;
};

/// Throws PreconditionError when the outcomes belong to another test.
Comparison compare_outcomes(const Test& t, const Outcome& a, const Outcome& b);

/// The functor on morphisms: moves an outcome of h.source to one of h.target.
/// TraceSet and OutputImage act as the identity, StateSet as the state map,
/// Terminal as the constant map.
Outcome transport(const Test& t, const MachineHom& h, const Outcome& outcome);

/// Black-box access to the target: the only route by which learning sees it.
class TargetOracle {
 public:
  virtual ~TargetOracle() = default;
  /// nullopt when the test cannot be run on the target.
  virtual std::optional<Outcome> query(const Test& t) = 0;
};

class MachineOracle final : public TargetOracle {
 public:
  explicit MachineOracle(MooreMachine target) : target_(std::move(target)) {}
  std::optional<Outcome> query(const Test& t) override { return run_test(t, target_); }

 private:
  MooreMachine target_;
};

struct KbEntry {
  std::string name;
  MooreMachine machine;

  bool operator==(const KbEntry&) const = default;
};

/// Known machines over one box.
struct KnowledgeBase {
  Box box;
  std::vector<KbEntry> entries;

  bool operator==(const KnowledgeBase&) const = default;
};

/// Throws InvariantError if an entry lives over another interface.
void validate_kb(const KnowledgeBase& kb);

enum class Classification { exact, ambiguous, unknown };
enum class Verdict { agree, disagree, unavailable };

std::string to_string(Classification c);
std::string to_string(Verdict v);

struct LearnResult {
  std::vector<std::string> candidates;
  Classification classification = Classification::unknown;
  std::vector<std::string> tests;                 // column order
  std::vector<std::string> rows;                  // entry / hypothesis names
  std::vector<std::vector<Verdict>> matrix;       // [row][test]
  std::vector<std::string> unavailable_tests;     // oracle could not answer
  std::vector<std::optional<std::string>> witness;  // per row: first disagreeing element

  bool complete() const { return unavailable_tests.empty(); }
};

Classification classify(std::size_t candidates);

/// Keeps the entries that agree with the target on every answered test.
/// Unanswered tests are recorded and do not filter.
LearnResult yoneda_filter(const KnowledgeBase& kb, const std::vector<Test>& battery,
                          TargetOracle& oracle);

/// A candidate architecture with machines on its leaves.
struct Hypothesis {
  std::string name;
  CompositeSystem system;
};

/// A hypothesis survives iff its composite agrees with the target on TraceSet(depth).
/// Throws CompositionError for a hypothesis whose outer box does not match.
LearnResult architecture_probe(TargetOracle& oracle, const Box& target_box,
                               const std::vector<Hypothesis>& hypotheses, std::size_t depth);

}  // namespace wdsec::probes
