#pragma once

// Picks the cheapest valid action subset (one constructing action, every
// field covered, minimal total cost) and assembles it into a deterministic
// ReconstructionPlan.

#include "pcs/actions.hpp"
#include "pcs/type_model.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace pcs {

struct PlanProblem {
    std::vector<Action> actions;
    CostTable costs;
    std::set<std::string> fieldUniverse;
};

struct Infeasible {
    std::string reason; // names the unsatisfiable constraint
};

struct Selection {
    std::vector<std::size_t> actionIndices; // sorted ascending
    std::uint64_t totalCost = 0;
};

using SolveResult = std::variant<Selection, Infeasible>;

/// Dispatches to exhaustive search below 20 actions, branch and bound above.
SolveResult solve(const PlanProblem& problem);

// Both strategies are exposed so they can be equivalence-tested against each
// other and against an independent oracle.
SolveResult solve_exhaustive(const PlanProblem& problem);
SolveResult solve_branch_and_bound(const PlanProblem& problem);

/// Throws ContractViolation when the subset does not satisfy the constraints.
ReconstructionPlan assemble_plan(const PlanProblem& problem, const Selection& selected, const TypeModel& model);

/// Binds every meta-variable from the captured field values.
/// Throws InstantiationError naming the first missing field.
InstantiatedPlan instantiate_plan(const ReconstructionPlan& plan,
                                  const std::map<std::string, CapturedValue>& values);

struct PlanOutcome {
    std::optional<ReconstructionPlan> plan;
    std::string infeasibleReason;
    bool feasible() const { return plan.has_value(); }
};

/// Convenience: enumerate actions for the model, solve, assemble.
PlanOutcome synthesize_plan(const TypeModel& model, const CostTable& costs);

// Which types reconstruct by plan (structure-based) and which by trace
// replay. Opaque types land in `unreconstructible`.
struct PlanRegistry {
    std::map<std::string, ReconstructionPlan> plans;
    std::map<std::string, std::string> traced;            // type -> why no plan exists
    std::map<std::string, std::string> unreconstructible; // type -> reason

    bool sbEligible(const std::string& type) const { return plans.count(type) != 0; }
    bool instrumented(const std::string& type) const { return traced.count(type) != 0; }
    const ReconstructionPlan* plan(const std::string& type) const;
};

PlanRegistry build_plan_registry(const std::map<std::string, TypeModel>& models, const CostTable& costs);

} // namespace pcs
