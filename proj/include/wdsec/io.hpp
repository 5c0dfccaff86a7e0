#pragma once

// JSON file formats. Every document carries a "schema" field:
//   system.v1    boxes, machines, homs, wirings and wired systems
//   machine.v1   one machine with its box inline (knowledge-base entries)
//   battery.v1   an ordered list of tests
//   attack.v1    an attack script whose payloads name entries of a system file
//   scenario.v1  the manifest tying the above together
//   fincat.v1    a finite category and functors on it
// Load failures raise LoadError with the file and a field path such as
// "machines[3].update[5].next", or a line and column for malformed JSON.

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "wdsec/attacks.hpp"
#include "wdsec/fincat.hpp"
#include "wdsec/probes.hpp"
#include "wdsec/scenarios.hpp"

namespace wdsec::io {

using Json = nlohmann::ordered_json;

class LoadError : public Error {
 public:
  LoadError(std::string file, std::string field, const std::string& message)
      : Error(file + (field.empty() ? "" : ": " + field) + ": " + message),
        file_(std::move(file)),
        field_(std::move(field)) {}
  const std::string& file() const noexcept { return file_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::string file_;
  std::string field_;
};

struct NamedWiring {
  std::string name;
  Wiring wiring;

  bool operator==(const NamedWiring&) const = default;
};

struct SystemDoc {
  std::vector<Box> boxes;
  std::vector<MooreMachine> machines;
  std::vector<MachineHom> homs;
  std::vector<NamedWiring> wirings;
  std::vector<CompositeSystem> systems;
  std::optional<std::string> main;

  /// Lookups by name; throw PreconditionError when absent.
  const Box& box(const std::string& name) const;
  const MooreMachine& machine(const std::string& name) const;
  const MachineHom& hom(const std::string& name) const;
  const Wiring& wiring(const std::string& name) const;
  const CompositeSystem& system(const std::string& name) const;
  /// `name`, or "main", or the only system.
  const CompositeSystem& pick_system(const std::optional<std::string>& name) const;

  bool operator==(const SystemDoc&) const = default;
};

struct BatteryDoc {
  std::vector<probes::Test> tests;
  bool operator==(const BatteryDoc&) const = default;
};

struct FinCatDoc {
  fincat::FinCategory category;
  std::vector<fincat::FinSetFunctor> functors;

  const fincat::FinSetFunctor& functor(const std::string& name) const;
  bool operator==(const FinCatDoc&) const = default;
};

struct ScenarioDoc {
  std::string systems_file;  // paths as written, relative to the manifest
  std::string kb_dir;
  std::string battery_file;
  std::vector<std::string> script_files;
  std::string real;
  std::string attacker_view;

  SystemDoc systems;
  scenarios::Scenario scenario;

  bool operator==(const ScenarioDoc&) const = default;
};

using Document = std::variant<SystemDoc, MooreMachine, BatteryDoc, attacks::AttackScript, ScenarioDoc,
                              FinCatDoc>;

std::string schema_of(const Document& d);

/// Reads and validates any document. attack.v1 files must name their system
/// file in "systems" for standalone loading.
Document load(const std::filesystem::path& path);

SystemDoc load_system(const std::filesystem::path& path);
MooreMachine load_machine(const std::filesystem::path& path);
BatteryDoc load_battery(const std::filesystem::path& path);
attacks::AttackScript load_attack(const std::filesystem::path& path, const SystemDoc& lib);
ScenarioDoc load_scenario(const std::filesystem::path& path);
FinCatDoc load_fincat(const std::filesystem::path& path);
/// One machine.v1 file per entry (*.json), in file-name order; every entry
/// must live over `box`.
probes::KnowledgeBase load_kb(const std::filesystem::path& dir, const Box& box);

/// Parsers from already-read JSON; `file` labels diagnostics.
SystemDoc parse_system(const Json& j, const std::string& file = "<memory>");
MooreMachine parse_machine(const Json& j, const std::string& file = "<memory>");
BatteryDoc parse_battery(const Json& j, const std::string& file = "<memory>");
attacks::AttackScript parse_attack(const Json& j, const SystemDoc& lib,
                                   const std::string& file = "<memory>");
FinCatDoc parse_fincat(const Json& j, const std::string& file = "<memory>");

/// Writers. Systems are written with explicit wirings; wiring expressions in
/// the input (compose, tensor, id, normalize) are resolved on load.
Json to_json(const SystemDoc& d);
Json to_json(const MooreMachine& m);  // machine.v1
Json to_json(const BatteryDoc& d);
/// Payloads are written by name; every machine, hom and endo must be in `lib`.
Json to_json(const attacks::AttackScript& s, const SystemDoc& lib);
Json to_json(const FinCatDoc& d);

Json box_json(const Box& b);
Json machine_body(const MooreMachine& m);  // machine entry of a system file (box by name)
Json hom_json(const MachineHom& h);
Json wiring_json(const std::string& name, const Wiring& w);

std::string dump(const Json& j);  // two-space indent, trailing newline
void write_file(const std::filesystem::path& path, const std::string& text);
Json read_json(const std::filesystem::path& path);

}  // namespace wdsec::io
