#pragma once

#include "sitcalc/eval.hpp"
#include "sitcalc/theory.hpp"

#include <map>
#include <optional>
#include <random>
#include <vector>

namespace sitcalc {

struct ProgressOptions {
  // Merge members by current world only, discarding history. Exact for
  // theories and queries that never look at prev; required to keep densely
  // discretized (Gaussian) runs tractable.
  bool collapse_history = false;
  // Float mode only: drop members whose share of the total weight falls
  // below this bound. Off by default because pruning also weakens Know.
  std::optional<double> prune_epsilon;
};

// One belief member per declared initial world (weight-0 declarations are
// kept: they are K-related but believed impossible). Throws TheoryError if
// the init list is empty.
BeliefState initial_belief(const ActionTheory& theory, NumericMode mode);

bool poss(const ActionTheory& theory, const GroundAction& action,
          const Trajectory& trajectory);

// Successor world under the fluents' successor-state rules: first matching
// case wins, unmatched fluents persist. The trajectory overload gives
// successor rules access to prev-indexed expressions.
WorldState apply_action(const ActionTheory& theory, const GroundAction& action,
                        const Trajectory& trajectory);
WorldState apply_action(const ActionTheory& theory, const GroundAction& action,
                        const WorldState& world);

// Likelihood of this exact action among its Oi class, evaluated at the
// trajectory's final state. Throws TheoryError if it comes out negative.
Value likelihood(const ActionTheory& theory, const GroundAction& action,
                 const Trajectory& trajectory);

// All ground actions carrying this signature: every schema of the group,
// with invisible parameters enumerated over their domains in declaration
// order. Deterministic order.
std::vector<GroundAction> oi_class(const ActionTheory& theory,
                                   const ObservationSignature& signature);

ObservationSignature signature_of(const ActionTheory& theory,
                                  const GroundAction& action);

// Ground instances of one schema with the given slots fixed and every other
// parameter enumerated over its domain, declaration order outermost first.
// Throws TheoryError when an open parameter's domain is not finite.
std::vector<GroundAction> schema_completions(const ActionTheory& theory,
                                             int schema,
                                             const std::map<int, Value>& fixed);

// The K/p progression step. New members are the Poss-satisfying extensions
// of current members by actions of the signature's Oi class, weighted by
// prior times likelihood. Members with identical world-state histories are
// merged (queries cannot tell them apart; only fluents are observable).
// Throws BeliefError when no successor exists: the agent knows some
// indistinguishable action happened, so the scenario contradicts the theory.
BeliefState progress(const ActionTheory& theory, const BeliefState& belief,
                     const ObservationSignature& signature,
                     const ProgressOptions& options = {});

// Normalized weight of members satisfying the formula. Throws BeliefError
// when the total weight is zero (belief undefined).
Value bel(const ActionTheory& theory, const BeliefState& belief,
          const Expr& formula);

// True iff the formula holds on every member, zero-weight members included.
// Throws BeliefError on an empty belief rather than answering vacuously.
bool know(const ActionTheory& theory, const BeliefState& belief,
          const Expr& formula);

// All terminal trajectories of a complex action: primitive steps require
// Poss, sequence chains, choice unions, pi ranges over its domain. Unbound
// parameters of a primitive expand over every possible completion.
std::vector<Trajectory> run_program(const ActionTheory& theory,
                                    const Program& program,
                                    const Trajectory& from,
                                    const Bindings& bindings = {});

// An agent command: an observation group plus values for a prefix of the
// nominal parameters. Unbound parameters are resolved by the environment
// (simulation) or reported by the sensor.
struct Command {
  std::string group;
  std::vector<Value> nominal_args;
};

struct StepOutcome {
  GroundAction action;
  ObservationSignature signature;
  WorldState world;
};

// Environment side of one command: samples among the Poss-satisfying
// completions with probability proportional to their likelihoods.
// Deterministic for a given rng state. Throws BeliefError when no completion
// is executable or all likelihoods are zero.
StepOutcome simulate_step(const ActionTheory& theory, const Trajectory& actual,
                          const Command& command, std::mt19937_64& rng);

// Signature determined by a command alone (belief-only progression): present
// iff every visible parameter is nominal and bound by the command.
std::optional<ObservationSignature> command_signature(const ActionTheory& theory,
                                                      const Command& command);

// Belief aggregated by final world for display, normalized when the total
// weight is positive. Sorted by world.
std::vector<std::pair<WorldState, Value>> belief_table(const BeliefState& belief);

// Sum of member weights (Number in exact mode, Real in float mode).
Value total_weight(const BeliefState& belief);

}  // namespace sitcalc
