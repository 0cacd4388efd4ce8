#pragma once

#include "sitcalc/value.hpp"

#include <string>
#include <vector>

namespace sitcalc {

// Total assignment of values to ground fluents; slot order is the theory's
// ground-fluent order.
struct WorldState {
  std::vector<Value> values;

  friend bool operator==(const WorldState& a, const WorldState& b) {
    return a.values == b.values;
  }
  friend bool operator<(const WorldState& a, const WorldState& b) {
    return a.values < b.values;
  }
};

struct GroundAction {
  int schema = -1;
  std::vector<Value> args;

  friend bool operator==(const GroundAction& a, const GroundAction& b) {
    return a.schema == b.schema && a.args == b.args;
  }
  friend bool operator<(const GroundAction& a, const GroundAction& b) {
    if (a.schema != b.schema) return a.schema < b.schema;
    return a.args < b.args;
  }
};

// The agent-visible footprint of an action: group key plus the visible
// argument tuple. Two ground actions are observationally indistinguishable
// exactly when their signatures are equal.
struct ObservationSignature {
  std::string group;
  std::vector<Value> args;

  std::string str() const;

  friend bool operator==(const ObservationSignature& a,
                         const ObservationSignature& b) {
    return a.group == b.group && a.args == b.args;
  }
  friend bool operator<(const ObservationSignature& a,
                        const ObservationSignature& b) {
    if (a.group != b.group) return a.group < b.group;
    return a.args < b.args;
  }
};

// A materialized situation: an initial world plus the actions applied so
// far, keeping every intermediate world so prev-indexed formulas can look
// back along the history.
struct Trajectory {
  int initial_index = -1;          // position in the theory's init list
  std::vector<WorldState> states;  // states.size() == actions.size() + 1
  std::vector<GroundAction> actions;

  const WorldState& current() const { return states.back(); }
  int length() const { return static_cast<int>(actions.size()); }
};

enum class NumericMode { Exact, Float };

struct BeliefMember {
  Trajectory trajectory;
  Value weight;  // Number in exact mode, Real in float mode; >= 0
};

// The K-related situations with their p weights after `step` progressions.
// Weights are unnormalized; normalization happens inside bel. Members with
// weight zero are kept: they are believed impossible yet still considered
// possible, which is what separates belief from knowledge.
struct BeliefState {
  int step = 0;
  NumericMode mode = NumericMode::Exact;
  std::vector<BeliefMember> members;
};

}  // namespace sitcalc
