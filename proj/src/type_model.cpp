#include "pcs/type_model.hpp"

#include "pcs/error.hpp"

#include <set>

namespace pcs {

const char* type_kind_name(TypeKind k) {
    switch (k) {
    case TypeKind::Composite: return "composite";
    case TypeKind::Enumeration: return "enumeration";
    case TypeKind::Primitive: return "primitive";
    case TypeKind::Sequence: return "sequence";
    case TypeKind::Map: return "map";
    case TypeKind::Opaque: return "opaque";
    }
    return "?";
}

TypeKind type_kind_from_name(const std::string& name) {
    if (name == "composite") return TypeKind::Composite;
    if (name == "enumeration") return TypeKind::Enumeration;
    if (name == "primitive") return TypeKind::Primitive;
    if (name == "sequence") return TypeKind::Sequence;
    if (name == "map") return TypeKind::Map;
    if (name == "opaque") return TypeKind::Opaque;
    throw DecodeError("unknown type kind: " + name);
}

std::string CallableSpec::signature() const {
    std::string sig = name + "(";
    for (std::size_t i = 0; i < parameters.size(); ++i) {
        if (i)
            sig += ",";
        sig += parameters[i].typeName;
    }
    sig += ")";
    return sig;
}

const FieldSpec* TypeModel::findField(const std::string& name) const {
    for (const auto& f : fields)
        if (f.name == name)
            return &f;
    return nullptr;
}

std::size_t TypeModel::fieldIndex(const std::string& name) const {
    for (std::size_t i = 0; i < fields.size(); ++i)
        if (fields[i].name == name)
            return i;
    return static_cast<std::size_t>(-1);
}

std::vector<ModelViolation> validate_type_model(const TypeModel& model) {
    std::vector<ModelViolation> out;
    auto add = [&](std::string msg) { out.push_back({model.typeName, std::move(msg)}); };

    std::set<std::string> seen;
    for (const auto& f : model.fields) {
        if (!seen.insert(f.name).second)
            add("duplicate field name \"" + f.name + "\"");
        if (f.assignable && !f.accessible)
            add("field \"" + f.name + "\" is assignable but not accessible");
    }

    auto checkCallable = [&](const CallableSpec& c, const char* role) {
        for (const auto& fieldName : c.setsFields)
            if (!model.findField(fieldName))
                add(std::string(role) + " \"" + c.signature() + "\" sets unknown field \"" + fieldName + "\"");
        if (c.paramBindsField.size() > c.parameters.size())
            add(std::string(role) + " \"" + c.signature() + "\" has more bindings than parameters");
    };
    for (const auto& c : model.constructors)
        checkCallable(c, "constructor");
    for (const auto& c : model.factoryMethods)
        checkCallable(c, "factory method");
    for (const auto& c : model.setters)
        checkCallable(c, "setter");

    const bool isEnum = model.kind == TypeKind::Enumeration;
    if (isEnum && model.enumConstants.empty())
        add("enumeration has no constants");
    if (!isEnum && !model.enumConstants.empty())
        add("non-enumeration declares enum constants");

    return out;
}

} // namespace pcs
