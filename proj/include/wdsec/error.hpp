#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace wdsec {

/// Base class for every domain error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A symbol index or symbol name that does not belong to a port alphabet.
class AlphabetError : public Error {
 public:
  using Error::Error;
};

/// Two wirings (or a wiring and a list of machines) disagree on a boundary.
class CompositionError : public Error {
 public:
  using Error::Error;
};

/// A value that breaks a structural invariant of its type.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// An operation was called on inputs that do not satisfy its precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

enum class Severity { error, warning };

struct Diagnostic {
  Severity severity = Severity::error;
  std::string category;  // "structure", "identity", "associativity", "totality", ...
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

/// Collected findings of a validation pass. Empty of errors means valid.
struct Report {
  std::vector<Diagnostic> items;

  void error(std::string category, std::string message) {
    items.push_back({Severity::error, std::move(category), std::move(message)});
  }
  void warning(std::string category, std::string message) {
    items.push_back({Severity::warning, std::move(category), std::move(message)});
  }

  bool ok() const {
    for (const auto& d : items)
      if (d.severity == Severity::error) return false;
    return true;
  }
  std::size_t count(const std::string& category) const {
    std::size_t n = 0;
    for (const auto& d : items)
      if (d.category == category) ++n;
    return n;
  }
  std::string to_string() const;
};

/// Raised when a value fails validation; carries the full report.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, Report report)
      : Error(what + "\n" + report.to_string()), report_(std::move(report)) {}
  const Report& report() const noexcept { return report_; }

 private:
  Report report_;
};

}  // namespace wdsec
