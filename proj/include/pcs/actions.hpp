#pragma once

#include "pcs/type_model.hpp"
#include "pcs/values.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace pcs {

enum class ActionKind {
    CallConstructor,
    CallFactoryMethod,
    UseEnumConstant,
    CallMethod,
    AssignField,
    UseNamedConstant,
    UseStaticField,
    UseObjectReference,
};

const char* action_kind_name(ActionKind k);
ActionKind action_kind_from_name(const std::string& name);

// A placeholder inside a plan, bound to a runtime value at instantiation.
struct MetaVariable {
    std::string placeholderName; // the field the value stands for
    std::string boundField;      // field (or parameter) the value is read from
};

// One statement archetype: constructs an instance and/or sets fields.
struct Action {
    ActionKind kind = ActionKind::CallConstructor;
    bool constructing = false;             // membership in alpha
    std::set<std::string> coveredFields;   // membership in beta_f for each f
    std::optional<CallableSpec> callable;  // constructor / factory / setter
    std::vector<MetaVariable> metaVariables;

    std::string typeName;     // owner type; enum type for UseEnumConstant
    std::string constantName; // enum constant, static field, or named-constant expression

    static Action callConstructor(const std::string& typeName, const CallableSpec& c);
    static Action callFactoryMethod(const std::string& typeName, const CallableSpec& c);
    static Action useEnumConstant(const std::string& typeName);
    static Action callMethod(const std::string& typeName, const CallableSpec& setter);
    static Action assignField(const std::string& typeName, const std::string& fieldName);
    static Action useNamedConstant(const std::string& typeName, const std::string& expression);
    static Action useStaticField(const std::string& ownerTypeName, const std::string& fieldName);
    static Action useObjectReference(const std::string& typeName);
};

bool validate_action(const Action& a, std::string* whyNot = nullptr);

// An ordered, constraint-satisfying selection of actions with meta-variables.
struct ReconstructionPlan {
    std::string targetType;
    std::vector<Action> actions;
    std::uint64_t totalCost = 0;
};

bool validate_plan(const ReconstructionPlan& plan, const TypeModel& model, std::string* whyNot = nullptr);

// An action whose meta-variables were replaced with captured values.
// For callables `values` is positional (one per parameter); AssignField and
// UseObjectReference carry exactly one value.
struct InstantiatedAction {
    Action action;
    std::vector<CapturedValue> values;
};

struct InstantiatedPlan {
    std::string targetType;
    std::vector<InstantiatedAction> actions;
    std::uint64_t totalCost = 0;
};

// Pre-defined integer cost per action kind.
struct CostTable {
    std::map<ActionKind, std::uint64_t> costs;

    static CostTable defaults();
    std::uint64_t cost(ActionKind k) const;
    bool has(ActionKind k) const { return costs.count(k) != 0; }
};

} // namespace pcs
