#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sitcalc {

struct SourceLoc {
  int line = 0;  // 1-based; 0 means "no location"
  int col = 0;
};

struct Diagnostic {
  enum class Severity { Info, Warning, Error };
  Severity severity = Severity::Error;
  SourceLoc loc;
  std::string message;
};

inline bool has_errors(const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags)
    if (d.severity == Diagnostic::Severity::Error) return true;
  return false;
}

// "12:3: error: ..." (location omitted when unknown).
std::string format_diagnostic(const Diagnostic& d, bool color = false);

// Raised when evaluating an expression fails at runtime: kind mismatch,
// division by zero, prev past the start of the trajectory.
class EvalError : public std::runtime_error {
 public:
  EvalError(std::string msg, SourceLoc loc = {})
      : std::runtime_error(std::move(msg)), loc(loc) {}
  SourceLoc loc;
};

// A structurally valid theory used in a way its declarations forbid
// (negative likelihood value, float weight in exact mode, unknown group).
class TheoryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Belief-level failures: impossible observation, belief undefined (total
// weight zero), empty belief set, command unexecutable in the actual world.
class BeliefError : public std::runtime_error {
 public:
  explicit BeliefError(std::string msg, int step = -1)
      : std::runtime_error(std::move(msg)), step(step) {}
  int step;  // scenario step index when known, else -1
};

}  // namespace sitcalc
