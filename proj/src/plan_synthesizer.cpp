#include "pcs/plan_synthesizer.hpp"

#include "pcs/error.hpp"
#include "pcs/type_analyzer.hpp"

#include <algorithm>
#include <limits>

namespace pcs {

namespace {

int kind_rank(ActionKind k) {
    switch (k) {
    case ActionKind::CallConstructor: return 0;
    case ActionKind::CallFactoryMethod: return 1;
    case ActionKind::UseEnumConstant: return 2;
    case ActionKind::CallMethod: return 3;
    case ActionKind::AssignField: return 4;
    case ActionKind::UseNamedConstant: return 5;
    case ActionKind::UseStaticField: return 6;
    case ActionKind::UseObjectReference: return 7;
    }
    return 8;
}

std::string action_sort_name(const Action& a) {
    if (a.callable)
        return a.callable->signature();
    if (!a.coveredFields.empty())
        return *a.coveredFields.begin();
    return a.constantName;
}

// Deterministic tie-break among equal-cost optima: fewer actions, then the
// lexicographically smallest action-kind sequence, then smallest names.
struct CanonicalKey {
    std::size_t count = 0;
    std::vector<int> kinds;
    std::vector<std::string> names;

    bool operator<(const CanonicalKey& o) const {
        if (count != o.count)
            return count < o.count;
        if (kinds != o.kinds)
            return kinds < o.kinds;
        return names < o.names;
    }
};

CanonicalKey canonical_key(const PlanProblem& p, const std::vector<std::size_t>& subset) {
    std::vector<std::pair<int, std::string>> parts;
    for (auto i : subset)
        parts.emplace_back(kind_rank(p.actions[i].kind), action_sort_name(p.actions[i]));
    std::sort(parts.begin(), parts.end());
    CanonicalKey key;
    key.count = parts.size();
    for (auto& [k, n] : parts) {
        key.kinds.push_back(k);
        key.names.push_back(std::move(n));
    }
    return key;
}

void check_costs_defined(const PlanProblem& p) {
    for (const auto& a : p.actions)
        if (!p.costs.has(a.kind))
            throw ContractViolation(std::string("no cost defined for action kind ") + action_kind_name(a.kind));
}

bool subset_satisfies(const PlanProblem& p, const std::vector<std::size_t>& subset, std::string* whyNot = nullptr) {
    std::size_t constructing = 0;
    std::set<std::string> covered;
    for (auto i : subset) {
        if (p.actions[i].constructing)
            ++constructing;
        covered.insert(p.actions[i].coveredFields.begin(), p.actions[i].coveredFields.end());
    }
    if (constructing != 1) {
        if (whyNot)
            *whyNot = "need exactly one constructing action, have " + std::to_string(constructing);
        return false;
    }
    for (const auto& f : p.fieldUniverse)
        if (!covered.count(f)) {
            if (whyNot)
                *whyNot = "field \"" + f + "\" is not covered";
            return false;
        }
    return true;
}

Infeasible diagnose_infeasible(const PlanProblem& p) {
    bool anyConstructing = false;
    for (const auto& a : p.actions)
        anyConstructing |= a.constructing;
    if (!anyConstructing)
        return {"no constructing action available"};
    for (const auto& f : p.fieldUniverse) {
        bool coverable = false;
        for (const auto& a : p.actions)
            coverable |= a.coveredFields.count(f) != 0;
        if (!coverable)
            return {"field \"" + f + "\" cannot be covered by any action"};
    }
    return {"constraints are jointly unsatisfiable"};
}

std::uint64_t subset_cost(const PlanProblem& p, const std::vector<std::size_t>& subset) {
    std::uint64_t total = 0;
    for (auto i : subset)
        total += p.costs.cost(p.actions[i].kind);
    return total;
}

struct Best {
    bool found = false;
    std::uint64_t cost = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::size_t> subset;
    CanonicalKey key;

    void offer(const PlanProblem& p, std::vector<std::size_t> candidate, std::uint64_t candidateCost) {
        std::sort(candidate.begin(), candidate.end());
        auto key2 = canonical_key(p, candidate);
        if (!found || candidateCost < cost || (candidateCost == cost && key2 < key)) {
            found = true;
            cost = candidateCost;
            subset = std::move(candidate);
            key = std::move(key2);
        }
    }
};

} // namespace

SolveResult solve_exhaustive(const PlanProblem& p) {
    check_costs_defined(p);
    const auto n = p.actions.size();
    if (n >= 60)
        throw ContractViolation("exhaustive search over " + std::to_string(n) + " actions is intractable");
    Best best;
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        std::vector<std::size_t> subset;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1ull << i))
                subset.push_back(i);
        if (!subset_satisfies(p, subset))
            continue;
        best.offer(p, subset, subset_cost(p, subset));
    }
    if (!best.found)
        return diagnose_infeasible(p);
    return Selection{best.subset, best.cost};
}

namespace {

struct CoverSearch {
    const PlanProblem& p;
    const std::vector<std::string> universe;            // deterministic field order
    const std::vector<std::size_t>& setters;            // candidate non-constructing actions
    std::map<std::string, std::uint64_t> minCoverCost;  // per-field admissible bound
    Best& best;

    std::vector<std::size_t> chosen;

    std::uint64_t bound(const std::set<std::string>& uncovered) const {
        std::uint64_t most = 0;
        for (const auto& f : uncovered)
            most = std::max(most, minCoverCost.at(f));
        return most;
    }

    void run(std::set<std::string> uncovered, std::uint64_t costSoFar) {
        if (uncovered.empty()) {
            best.offer(p, chosen, costSoFar);
            return;
        }
        if (best.found && costSoFar + bound(uncovered) > best.cost)
            return;
        // Branch on the first uncovered field in declaration order.
        std::string target;
        for (const auto& f : universe)
            if (uncovered.count(f)) {
                target = f;
                break;
            }
        for (auto i : setters) {
            if (!p.actions[i].coveredFields.count(target))
                continue;
            std::set<std::string> remaining = uncovered;
            for (const auto& f : p.actions[i].coveredFields)
                remaining.erase(f);
            chosen.push_back(i);
            run(std::move(remaining), costSoFar + p.costs.cost(p.actions[i].kind));
            chosen.pop_back();
        }
    }
};

} // namespace

SolveResult solve_branch_and_bound(const PlanProblem& p) {
    check_costs_defined(p);

    std::vector<std::size_t> constructing;
    std::vector<std::size_t> setters;
    for (std::size_t i = 0; i < p.actions.size(); ++i) {
        if (p.actions[i].constructing) {
            constructing.push_back(i);
        } else {
            // Useless actions (covering nothing in the universe) can never
            // improve cost or the tie-break, so they are not candidates.
            for (const auto& f : p.actions[i].coveredFields)
                if (p.fieldUniverse.count(f)) {
                    setters.push_back(i);
                    break;
                }
        }
    }
    if (constructing.empty())
        return diagnose_infeasible(p);

    std::map<std::string, std::uint64_t> minCoverCost;
    for (const auto& f : p.fieldUniverse) {
        std::uint64_t least = std::numeric_limits<std::uint64_t>::max();
        for (const auto& a : p.actions)
            if (a.coveredFields.count(f))
                least = std::min(least, p.costs.cost(a.kind));
        if (least == std::numeric_limits<std::uint64_t>::max())
            return diagnose_infeasible(p);
        minCoverCost[f] = least;
    }

    std::vector<std::string> universe(p.fieldUniverse.begin(), p.fieldUniverse.end());
    Best best;
    for (auto c : constructing) {
        std::set<std::string> uncovered = p.fieldUniverse;
        for (const auto& f : p.actions[c].coveredFields)
            uncovered.erase(f);
        CoverSearch search{p, universe, setters, minCoverCost, best, {c}};
        search.run(std::move(uncovered), p.costs.cost(p.actions[c].kind));
    }
    if (!best.found)
        return diagnose_infeasible(p);
    return Selection{best.subset, best.cost};
}

SolveResult solve(const PlanProblem& p) {
    if (p.actions.size() < 20)
        return solve_exhaustive(p);
    return solve_branch_and_bound(p);
}

ReconstructionPlan assemble_plan(const PlanProblem& problem, const Selection& selected, const TypeModel& model) {
    std::string why;
    if (!subset_satisfies(problem, selected.actionIndices, &why))
        throw ContractViolation("assemble_plan: selection violates constraints: " + why);

    std::vector<Action> constructingActions;
    std::vector<Action> fieldSetters;
    for (auto i : selected.actionIndices) {
        if (problem.actions[i].constructing)
            constructingActions.push_back(problem.actions[i]);
        else
            fieldSetters.push_back(problem.actions[i]);
    }

    // Field-setting actions follow the target type's field declaration order;
    // ties go to callMethod before assignField, then the callable name.
    auto positionOf = [&](const Action& a) {
        std::size_t least = model.fields.size();
        for (const auto& f : a.coveredFields)
            least = std::min(least, model.fieldIndex(f));
        return least;
    };
    std::stable_sort(fieldSetters.begin(), fieldSetters.end(), [&](const Action& a, const Action& b) {
        const auto pa = positionOf(a), pb = positionOf(b);
        if (pa != pb)
            return pa < pb;
        const auto ka = kind_rank(a.kind), kb = kind_rank(b.kind);
        if (ka != kb)
            return ka < kb;
        return action_sort_name(a) < action_sort_name(b);
    });

    ReconstructionPlan plan;
    plan.targetType = model.typeName;
    plan.totalCost = selected.totalCost;
    plan.actions.push_back(constructingActions.front());
    for (auto& a : fieldSetters)
        plan.actions.push_back(std::move(a));
    return plan;
}

InstantiatedPlan instantiate_plan(const ReconstructionPlan& plan, const std::map<std::string, CapturedValue>& values) {
    InstantiatedPlan out;
    out.targetType = plan.targetType;
    out.totalCost = plan.totalCost;

    auto valueFor = [&](const std::string& field) -> const CapturedValue& {
        auto it = values.find(field);
        if (it == values.end())
            throw InstantiationError("no value for meta-variable \"" + field + "\" of " + plan.targetType);
        return it->second;
    };

    for (const auto& action : plan.actions) {
        InstantiatedAction ia;
        ia.action = action;
        switch (action.kind) {
        case ActionKind::CallConstructor:
        case ActionKind::CallFactoryMethod:
        case ActionKind::CallMethod:
            for (const auto& mv : action.metaVariables)
                ia.values.push_back(valueFor(mv.boundField));
            break;
        case ActionKind::AssignField:
            ia.values.push_back(valueFor(*action.coveredFields.begin()));
            break;
        case ActionKind::UseEnumConstant:
            ia.values.push_back(valueFor("constant"));
            break;
        case ActionKind::UseStaticField:
        case ActionKind::UseNamedConstant:
        case ActionKind::UseObjectReference:
            break;
        }
        out.actions.push_back(std::move(ia));
    }
    return out;
}

PlanOutcome synthesize_plan(const TypeModel& model, const CostTable& costs) {
    PlanOutcome outcome;
    PlanProblem problem;
    problem.actions = enumerate_actions(model);
    problem.costs = costs;
    for (const auto& f : model.fields)
        problem.fieldUniverse.insert(f.name);

    auto result = solve(problem);
    if (auto* infeasible = std::get_if<Infeasible>(&result)) {
        outcome.infeasibleReason = infeasible->reason;
        return outcome;
    }
    outcome.plan = assemble_plan(problem, std::get<Selection>(result), model);
    return outcome;
}

const ReconstructionPlan* PlanRegistry::plan(const std::string& type) const {
    auto it = plans.find(type);
    return it == plans.end() ? nullptr : &it->second;
}

PlanRegistry build_plan_registry(const std::map<std::string, TypeModel>& models, const CostTable& costs) {
    PlanRegistry registry;
    for (const auto& [name, model] : models) {
        if (model.kind == TypeKind::Opaque) {
            registry.unreconstructible[name] = "opaque type";
            continue;
        }
        if (model.kind != TypeKind::Composite && model.kind != TypeKind::Enumeration)
            continue;
        auto outcome = synthesize_plan(model, costs);
        if (outcome.feasible())
            registry.plans[name] = std::move(*outcome.plan);
        else
            registry.traced[name] = outcome.infeasibleReason;
    }
    return registry;
}

} // namespace pcs
