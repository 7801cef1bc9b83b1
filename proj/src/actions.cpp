#include "pcs/actions.hpp"

#include "pcs/error.hpp"

namespace pcs {

const char* action_kind_name(ActionKind k) {
    switch (k) {
    case ActionKind::CallConstructor: return "callConstructor";
    case ActionKind::CallFactoryMethod: return "callFactoryMethod";
    case ActionKind::UseEnumConstant: return "useEnumConstant";
    case ActionKind::CallMethod: return "callMethod";
    case ActionKind::AssignField: return "assignField";
    case ActionKind::UseNamedConstant: return "useNamedConstant";
    case ActionKind::UseStaticField: return "useStaticField";
    case ActionKind::UseObjectReference: return "useObjectReference";
    }
    return "?";
}

ActionKind action_kind_from_name(const std::string& name) {
    if (name == "callConstructor") return ActionKind::CallConstructor;
    if (name == "callFactoryMethod") return ActionKind::CallFactoryMethod;
    if (name == "useEnumConstant") return ActionKind::UseEnumConstant;
    if (name == "callMethod") return ActionKind::CallMethod;
    if (name == "assignField") return ActionKind::AssignField;
    if (name == "useNamedConstant") return ActionKind::UseNamedConstant;
    if (name == "useStaticField") return ActionKind::UseStaticField;
    if (name == "useObjectReference") return ActionKind::UseObjectReference;
    throw DecodeError("unknown action kind: " + name);
}

static std::vector<MetaVariable> metaVariablesFor(const CallableSpec& c) {
    std::vector<MetaVariable> out;
    for (std::size_t i = 0; i < c.parameters.size(); ++i) {
        const auto& bound = i < c.paramBindsField.size() ? c.paramBindsField[i] : std::nullopt;
        // A parameter bound to a field stands for that field; an unbound
        // parameter is filled from the recorded argument.
        out.push_back({bound.value_or(c.parameters[i].name), bound.value_or(c.parameters[i].name)});
    }
    return out;
}

Action Action::callConstructor(const std::string& typeName, const CallableSpec& c) {
    Action a;
    a.kind = ActionKind::CallConstructor;
    a.constructing = true;
    a.coveredFields = c.setsFields;
    a.callable = c;
    a.metaVariables = metaVariablesFor(c);
    a.typeName = typeName;
    return a;
}

Action Action::callFactoryMethod(const std::string& typeName, const CallableSpec& c) {
    Action a = callConstructor(typeName, c);
    a.kind = ActionKind::CallFactoryMethod;
    return a;
}

Action Action::useEnumConstant(const std::string& typeName) {
    Action a;
    a.kind = ActionKind::UseEnumConstant;
    a.constructing = true;
    a.typeName = typeName;
    a.metaVariables.push_back({"constant", "constant"});
    return a;
}

Action Action::callMethod(const std::string& typeName, const CallableSpec& setter) {
    Action a;
    a.kind = ActionKind::CallMethod;
    a.constructing = false;
    a.coveredFields = setter.setsFields;
    a.callable = setter;
    a.metaVariables = metaVariablesFor(setter);
    a.typeName = typeName;
    return a;
}

Action Action::assignField(const std::string& typeName, const std::string& fieldName) {
    Action a;
    a.kind = ActionKind::AssignField;
    a.constructing = false;
    a.coveredFields = {fieldName};
    a.metaVariables.push_back({fieldName, fieldName});
    a.typeName = typeName;
    return a;
}

Action Action::useNamedConstant(const std::string& typeName, const std::string& expression) {
    Action a;
    a.kind = ActionKind::UseNamedConstant;
    a.constructing = true;
    a.typeName = typeName;
    a.constantName = expression;
    return a;
}

Action Action::useStaticField(const std::string& ownerTypeName, const std::string& fieldName) {
    Action a;
    a.kind = ActionKind::UseStaticField;
    a.constructing = true;
    a.typeName = ownerTypeName;
    a.constantName = fieldName;
    return a;
}

Action Action::useObjectReference(const std::string& typeName) {
    Action a;
    a.kind = ActionKind::UseObjectReference;
    a.constructing = true;
    a.typeName = typeName;
    return a;
}

bool validate_action(const Action& a, std::string* whyNot) {
    auto fail = [&](const std::string& msg) {
        if (whyNot)
            *whyNot = msg;
        return false;
    };
    switch (a.kind) {
    case ActionKind::CallConstructor:
    case ActionKind::CallFactoryMethod:
    case ActionKind::UseEnumConstant:
    case ActionKind::UseNamedConstant:
    case ActionKind::UseStaticField:
    case ActionKind::UseObjectReference:
        if (!a.constructing)
            return fail(std::string(action_kind_name(a.kind)) + " must be constructing");
        break;
    case ActionKind::CallMethod:
        break;
    case ActionKind::AssignField:
        if (a.coveredFields.size() != 1)
            return fail("assignField must cover exactly one field");
        break;
    }
    return true;
}

bool validate_plan(const ReconstructionPlan& plan, const TypeModel& model, std::string* whyNot) {
    auto fail = [&](const std::string& msg) {
        if (whyNot)
            *whyNot = msg;
        return false;
    };
    std::size_t constructing = 0;
    for (const auto& a : plan.actions)
        if (a.constructing)
            ++constructing;
    if (constructing != 1)
        return fail("plan must contain exactly one constructing action");
    if (plan.actions.empty() || !plan.actions.front().constructing)
        return fail("the constructing action must come first");

    std::set<std::string> covered;
    for (const auto& a : plan.actions) {
        std::string why;
        if (!validate_action(a, &why))
            return fail(why);
        covered.insert(a.coveredFields.begin(), a.coveredFields.end());
    }
    for (const auto& f : model.fields)
        if (!covered.count(f.name))
            return fail("field \"" + f.name + "\" is not covered");
    for (const auto& f : covered)
        if (!model.findField(f))
            return fail("plan covers unknown field \"" + f + "\"");
    return true;
}

CostTable CostTable::defaults() {
    CostTable t;
    t.costs = {
        {ActionKind::CallConstructor, 1},
        {ActionKind::UseEnumConstant, 1},
        {ActionKind::UseNamedConstant, 1},
        {ActionKind::UseStaticField, 1},
        {ActionKind::CallFactoryMethod, 2},
        {ActionKind::CallMethod, 3},
        {ActionKind::UseObjectReference, 4},
        {ActionKind::AssignField, 5},
    };
    return t;
}

std::uint64_t CostTable::cost(ActionKind k) const {
    auto it = costs.find(k);
    if (it == costs.end())
        throw ContractViolation(std::string("no cost defined for action kind ") + action_kind_name(k));
    return it->second;
}

} // namespace pcs
