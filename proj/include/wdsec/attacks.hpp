#pragma once

// Rewriting attacks (replace the behaviour in one slot) and rewiring attacks
// (pre-compose an endomorphism of one inner box), applied to wired systems.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wdsec/algebra.hpp"
#include "wdsec/oracle.hpp"
#include "wdsec/probes.hpp"

namespace wdsec::attacks {

/// A component of a system, by position or by inner box name.
using Slot = std::variant<std::size_t, std::string>;

/// Throws PreconditionError for an unknown name or an index out of range.
std::size_t resolve(const CompositeSystem& sys, const Slot& slot);
std::string describe(const Slot& slot);

struct Replace {
  MooreMachine machine;
  bool operator==(const Replace&) const = default;
};
/// The hom's source must have the slot's current tables.
struct ViaHom {
  MachineHom hom;
  bool operator==(const ViaHom&) const = default;
};

struct RewriteStep {
  Slot target;
  std::variant<Replace, ViaHom> mode;
  bool operator==(const RewriteStep&) const = default;
};

struct RewireStep {
  Slot target;
  Wiring endo;  // inner = [X_i], outer = [X_i]
  bool operator==(const RewireStep&) const = default;
};

using Step = std::variant<RewriteStep, RewireStep>;

struct AttackScript {
  std::string name;
  std::vector<Step> steps;
  bool operator==(const AttackScript&) const = default;
};

struct RewriteResult {
  CompositeSystem system;
  /// Hom mode only: lift_hom(w, [id, ..., h, ..., id]) from the old composite to the new one.
  std::optional<MachineHom> witness;
};

/// Component i replaced, wiring untouched. Throws CompositionError on an
/// interface mismatch and InvariantError when the hom does not commute.
RewriteResult apply_rewrite(const CompositeSystem& sys, const RewriteStep& step);

/// Wiring becomes sys.wiring o (id ⊗ ... ⊗ endo ⊗ ... ⊗ id); components untouched.
CompositeSystem apply_rewire(const CompositeSystem& sys, const RewireStep& step);

struct LogEntry {
  std::size_t step = 0;
  std::string kind;  // "rewrite" or "rewire"
  std::size_t slot = 0;
  std::string box;
  std::string detail;
  std::uint64_t wiring_fingerprint = 0;
  std::vector<std::uint64_t> component_fingerprints;
};

struct ScriptResult {
  CompositeSystem system;
  std::vector<LogEntry> log;
  std::vector<MachineHom> witnesses;
};

/// A step failed; the log covers the steps applied before it.
class ScriptError : public Error {
 public:
  ScriptError(const std::string& what, std::vector<LogEntry> partial)
      : Error(what), partial_(std::move(partial)) {}
  const std::vector<LogEntry>& partial_log() const noexcept { return partial_; }

 private:
  std::vector<LogEntry> partial_;
};

ScriptResult apply_script(const CompositeSystem& sys, const AttackScript& script);

struct DiffReport {
  bool equivalent = false;
  std::size_t depth = 0;
  std::optional<Word> witness;
  std::optional<Word> baseline_output;
  std::optional<Word> attacked_output;
  std::vector<probes::Test> battery;
  std::vector<probes::Comparison> battery_results;
};

/// Throws CompositionError when the outer boxes differ.
DiffReport attack_diff(const CompositeSystem& baseline, const CompositeSystem& attacked,
                       std::size_t depth = oracle::kDefaultDepth);
std::string render(const DiffReport& r, const Box& outer);

/// View component name -> real component names (several for a merged box).
struct CorrespondenceEntry {
  std::string view;
  std::vector<std::string> real;

  bool operator==(const CorrespondenceEntry&) const = default;
};
using Correspondence = std::vector<CorrespondenceEntry>;

/// Rewrites a script written against `view` into one against the real system:
/// each step is repeated on every real component its target corresponds to.
AttackScript transport(const AttackScript& script, const CompositeSystem& view,
                       const Correspondence& corr);

/// Throws InvariantError unless every view component has an entry naming real slots.
void validate_correspondence(const Correspondence& corr, const CompositeSystem& view,
                             const CompositeSystem& real);

}  // namespace wdsec::attacks
